#include "cmatel/certify.hpp"

#include <deque>
#include <sstream>

#include <json.hpp>

#include "cmatel/syntax.hpp"

namespace cmatel {

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::H1:
      return "H1";
    case Condition::H2:
      return "H2";
    case Condition::SuccX:
      return "SUCC-X";
    case Condition::SuccD:
      return "SUCC-D";
    case Condition::H6Forward:
      return "H6-forward";
    case Condition::RealC:
      return "REAL-C";
    case Condition::RealU:
      return "REAL-U";
  }
  return "?";
}

namespace {

// Forward search for a witness path; deliberately not shared with the
// elimination code.
bool realized(const Tableau& t, StateIndex from, const Formula& xi) {
  const bool temporal = xi.is(Op::Until);
  const Formula goal = temporal ? xi.rhs() : Formula::negation(xi.body().body());
  std::vector<bool> seen(t.states().size(), false);
  std::deque<StateIndex> work{from};
  seen[from] = true;
  while (!work.empty()) {
    StateIndex s = work.front();
    work.pop_front();
    const auto& label = t.state(s).label;
    if (label.count(goal)) return true;
    if (temporal) {
      if (!label.count(xi.lhs())) continue;
      for (std::size_t e : t.temporal_out(s)) {
        StateIndex d = t.temporal_edges()[e].dst;
        if (t.alive(d) && !seen[d]) {
          seen[d] = true;
          work.push_back(d);
        }
      }
    } else {
      const Coalition a = xi.body().coalition();
      for (std::size_t e : t.epistemic_out(s)) {
        const auto& edge = t.epistemic_edges()[e];
        if (!edge.marker.body().coalition().subset_of(a)) continue;
        if (t.alive(edge.dst) && !seen[edge.dst]) {
          seen[edge.dst] = true;
          work.push_back(edge.dst);
        }
      }
    }
  }
  return false;
}

}  // namespace

CertificateReport check_certificate(const Tableau& t) {
  CertificateReport report;
  const auto& u = t.universe();
  auto fail = [&](Condition c, StateIndex s, std::string detail) {
    report.violations.push_back({c, s, std::move(detail)});
  };

  for (StateIndex s : t.live_states()) {
    const FormulaSet& label = t.state(s).label;

    for (const auto& f : label)
      if (f.is(Op::Not) && label.count(f.body())) fail(Condition::H1, s, "complementary pair on " + render(f.body(), u));

    for (int c : violated_conditions(label, u, t.expansion_mode()))
      fail(Condition::H2, s, "expansion condition " + std::to_string(c) + " fails");

    FormulaSet promised;
    for (const auto& f : label)
      if (f.is(Op::Next)) promised.insert(f.body());
    bool any_successor = false;
    for (std::size_t e : t.temporal_out(s)) {
      StateIndex d = t.temporal_edges()[e].dst;
      if (!t.alive(d)) continue;
      any_successor = true;
      for (const auto& f : promised)
        if (!t.state(d).label.count(f))
          fail(Condition::SuccX, s, "successor " + std::to_string(t.state(d).ordinal) + " lacks " + render(f, u));
    }
    if (!any_successor) fail(Condition::SuccX, s, "no temporal successor");

    for (const auto& chi : label) {
      if (!chi.is_negated(Op::Dk)) continue;
      const Coalition a = chi.body().coalition();
      const Formula need = Formula::negation(chi.body().body());
      bool witnessed = false;
      for (std::size_t e : t.epistemic_out(s)) {
        const auto& edge = t.epistemic_edges()[e];
        if (!(edge.marker == chi) || !t.alive(edge.dst)) continue;
        const FormulaSet& target = t.state(edge.dst).label;
        if (!target.count(need)) continue;
        witnessed = true;
        for (const auto& f : label) {
          const Formula d = f.is(Op::Not) ? f.body() : f;
          if (d.is(Op::Dk) && d.coalition().subset_of(a) && !target.count(f))
            fail(Condition::H6Forward, s,
                 "successor " + std::to_string(t.state(edge.dst).ordinal) + " lacks " + render(f, u));
        }
      }
      if (!witnessed) fail(Condition::SuccD, s, "no live successor for " + render(chi, u));
    }

    for (const auto& f : label) {
      const auto kind = is_eventuality(f);
      if (kind == Eventuality::None || realized(t, s, f)) continue;
      fail(kind == Eventuality::Temporal ? Condition::RealU : Condition::RealC, s, "unrealized " + render(f, u));
    }
  }
  return report;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string state_label(std::size_t ordinal, const FormulaSet& label, const AgentUniverse& u) {
  std::string body;
  for (const auto& f : label) body += (body.empty() ? "" : ", ") + render(f, u, RenderStyle::Compact);
  return "Δ" + std::to_string(ordinal) + ": {" + body + "}";
}

}  // namespace

std::string export_dot(const Pretableau& p, const DotOptions& opts) {
  const auto& u = p.universe();
  std::ostringstream os;
  os << "digraph \"" << escape(opts.graph_name) << "\" {\n";
  auto id = [&](NodeId n) {
    const Node& node = p.node(n);
    return (node.kind == NodeKind::Prestate ? "G" : "D") + std::to_string(node.ordinal);
  };
  for (NodeId n = 0; n < p.nodes().size(); ++n) {
    const Node& node = p.node(n);
    if (node.kind == NodeKind::Prestate) {
      std::string body;
      for (const auto& f : node.label) body += (body.empty() ? "" : ", ") + render(f, u, RenderStyle::Compact);
      os << "  " << id(n) << " [shape=box, label=\"" << escape("Γ" + std::to_string(node.ordinal) + ": {" + body + "}")
         << "\"];\n";
    } else {
      os << "  " << id(n) << " [shape=ellipse, label=\"" << escape(state_label(node.ordinal, node.label, u)) << "\"];\n";
    }
  }
  for (const auto& e : p.edges()) {
    os << "  " << id(e.src) << " -> " << id(e.dst);
    switch (e.kind) {
      case EdgeKind::Expansion:
        os << " [style=bold, color=\"black:black\", label=\"=>\"]";
        break;
      case EdgeKind::Epistemic:
        os << " [label=\"" << escape(render(*e.marker, u, RenderStyle::Compact)) << "\"]";
        break;
      case EdgeKind::Temporal:
        break;
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const Tableau& t, const DotOptions& opts) {
  const auto& u = t.universe();
  std::ostringstream os;
  os << "digraph \"" << escape(opts.graph_name) << "\" {\n";
  auto shown = [&](StateIndex s) { return t.alive(s) || opts.include_removed; };
  for (StateIndex s = 0; s < t.states().size(); ++s) {
    if (!shown(s)) continue;
    const auto& st = t.state(s);
    os << "  D" << st.ordinal << " [shape=ellipse, label=\"" << escape(state_label(st.ordinal, st.label, u)) << "\"";
    if (!st.alive) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : t.epistemic_edges())
    if (shown(e.src) && shown(e.dst))
      os << "  D" << t.state(e.src).ordinal << " -> D" << t.state(e.dst).ordinal << " [label=\""
         << escape(render(e.marker, u, RenderStyle::Compact)) << "\"];\n";
  for (const auto& e : t.temporal_edges())
    if (shown(e.src) && shown(e.dst)) os << "  D" << t.state(e.src).ordinal << " -> D" << t.state(e.dst).ordinal << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_trace(const Decision& d) {
  using nlohmann::ordered_json;
  const auto& u = d.pretableau.universe();
  ordered_json j;
  j["formula"] = render(d.pretableau.theta(), u);
  j["mode"] = d.pretableau.options().sync == SyncMode::Synchronous ? "sync" : "async";
  j["phases"] = {{"prestates", d.verdict.stats.prestates}, {"states", d.verdict.stats.pretableau_states}};
  ordered_json stages = ordered_json::array();
  for (const auto& s : d.verdict.trace) {
    ordered_json st;
    st["i"] = s.index;
    st["rule"] = rule_name(s.rule);
    st["removed"] = d.final.state(s.removed).ordinal;
    if (s.why) st["why"] = render(*s.why, u);
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  j["result"] = d.verdict.result == Result::Sat ? "SAT" : "UNSAT";
  if (d.verdict.witness) j["witness"] = d.final.state(*d.verdict.witness).ordinal;
  return j.dump(2) + "\n";
}

}  // namespace cmatel
