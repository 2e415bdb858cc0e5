#include "cmatel/tableau.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace cmatel {

Tableau::Tableau(Formula theta, AgentUniverse universe, ExpansionMode mode)
    : theta_(std::move(theta)), universe_(std::move(universe)), mode_(mode) {}

StateIndex Tableau::add_state(NodeId origin, std::size_t ordinal, FormulaSet label) {
  states_.push_back({origin, ordinal, std::move(label), true});
  epistemic_out_.emplace_back();
  temporal_out_.emplace_back();
  return states_.size() - 1;
}

void Tableau::add_epistemic(StateIndex src, StateIndex dst, Formula marker) {
  if (!epistemic_seen_.emplace(src, dst, marker).second) return;
  epistemic_out_.at(src).push_back(epistemic_.size());
  epistemic_.push_back({src, dst, std::move(marker)});
}

void Tableau::add_temporal(StateIndex src, StateIndex dst) {
  if (!temporal_seen_.emplace(src, dst).second) return;
  temporal_out_.at(src).push_back(temporal_.size());
  temporal_.push_back({src, dst});
}

void Tableau::remove(StateIndex i) { states_.at(i).alive = false; }

std::vector<StateIndex> Tableau::live_states() const {
  std::vector<StateIndex> out;
  for (StateIndex i = 0; i < states_.size(); ++i)
    if (states_[i].alive) out.push_back(i);
  return out;
}

std::size_t Tableau::live_count() const {
  return static_cast<std::size_t>(std::count_if(states_.begin(), states_.end(), [](const auto& s) { return s.alive; }));
}

Tableau eliminate_prestates(const Pretableau& p) {
  Tableau t(p.theta(), p.universe(), p.options().expansion.mode);
  std::vector<std::optional<StateIndex>> index(p.nodes().size());
  for (NodeId id = 0; id < p.nodes().size(); ++id) {
    const Node& n = p.node(id);
    if (n.kind == NodeKind::State) index[id] = t.add_state(id, n.ordinal, n.label);
  }
  for (const auto& e : p.edges()) {
    if (e.kind == EdgeKind::Expansion) continue;
    const StateIndex src = *index[e.src];
    // Targets of state edges are prestates; reroute to every state they expand to.
    for (NodeId d : p.states_of(e.dst)) {
      if (e.kind == EdgeKind::Epistemic)
        t.add_epistemic(src, *index[d], *e.marker);
      else
        t.add_temporal(src, *index[d]);
    }
  }
  return t;
}

std::vector<bool> realization_marks(const Tableau& t, const Formula& xi) {
  const auto& states = t.states();
  std::vector<bool> marked(states.size(), false);
  const auto kind = is_eventuality(xi);
  if (kind == Eventuality::None) return marked;

  // Backward reachability: reverse the qualifying edges between live states.
  std::vector<std::vector<StateIndex>> preds(states.size());
  Formula seed_formula = xi;
  if (kind == Eventuality::Temporal) {
    seed_formula = xi.rhs();
    const Formula& stay = xi.lhs();
    for (const auto& e : t.temporal_edges())
      if (states[e.src].alive && states[e.dst].alive && states[e.src].label.count(stay)) preds[e.dst].push_back(e.src);
  } else {
    const Formula ck = xi.body();
    seed_formula = Formula::negation(ck.body());
    const Coalition a = ck.coalition();
    for (const auto& e : t.epistemic_edges()) {
      if (!states[e.src].alive || !states[e.dst].alive) continue;
      if (e.marker.is_negated(Op::Dk) && e.marker.body().coalition().subset_of(a)) preds[e.dst].push_back(e.src);
    }
  }

  std::deque<StateIndex> work;
  for (StateIndex i = 0; i < states.size(); ++i) {
    if (states[i].alive && states[i].label.count(seed_formula)) {
      marked[i] = true;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    StateIndex d = work.front();
    work.pop_front();
    for (StateIndex s : preds[d]) {
      if (!marked[s]) {
        marked[s] = true;
        work.push_back(s);
      }
    }
  }
  return marked;
}

std::vector<Formula> eventualities(const Tableau& t) {
  FormulaSet found;
  for (const auto& s : t.states())
    if (s.alive)
      for (const auto& f : s.label)
        if (is_eventuality(f) != Eventuality::None) found.insert(f);
  return {found.begin(), found.end()};
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::E1E:
      return "E1E";
    case Rule::E1T:
      return "E1T";
    case Rule::E2:
      return "E2";
  }
  return "?";
}

namespace {

std::vector<StateIndex> by_label(const Tableau& t, std::vector<StateIndex> idx) {
  std::sort(idx.begin(), idx.end(), [&](StateIndex a, StateIndex b) {
    return compare_sets(t.state(a).label, t.state(b).label) < 0;
  });
  return idx;
}

std::optional<Stage> remove_one(Tableau& t, Rule rule, const std::vector<std::pair<StateIndex, std::optional<Formula>>>& found,
                                const RemovalChooser& choose) {
  if (found.empty()) return std::nullopt;
  std::vector<StateIndex> candidates;
  for (const auto& f : found) candidates.push_back(f.first);
  std::vector<StateIndex> ordered = by_label(t, candidates);
  std::size_t pick = choose ? choose(ordered) : 0;
  if (pick >= ordered.size()) throw Error("removal chooser returned an out-of-range candidate");
  const StateIndex victim = ordered[pick];
  std::optional<Formula> why;
  for (const auto& f : found)
    if (f.first == victim) why = f.second;
  t.remove(victim);
  return Stage{0, rule, victim, why};
}

}  // namespace

std::optional<Stage> apply_e1e(Tableau& t, const RemovalChooser& choose) {
  std::vector<std::pair<StateIndex, std::optional<Formula>>> found;
  for (StateIndex i : t.live_states()) {
    for (const auto& chi : t.state(i).label) {
      if (!chi.is_negated(Op::Dk)) continue;
      const auto& out = t.epistemic_out(i);
      const bool supported = std::any_of(out.begin(), out.end(), [&](std::size_t e) {
        const auto& edge = t.epistemic_edges()[e];
        return edge.marker == chi && t.alive(edge.dst);
      });
      if (!supported) {
        found.emplace_back(i, chi);
        break;
      }
    }
  }
  return remove_one(t, Rule::E1E, found, choose);
}

std::optional<Stage> apply_e1t(Tableau& t, const RemovalChooser& choose) {
  std::vector<std::pair<StateIndex, std::optional<Formula>>> found;
  for (StateIndex i : t.live_states()) {
    const auto& out = t.temporal_out(i);
    const bool has_successor =
        std::any_of(out.begin(), out.end(), [&](std::size_t e) { return t.alive(t.temporal_edges()[e].dst); });
    if (!has_successor) found.emplace_back(i, std::nullopt);
  }
  return remove_one(t, Rule::E1T, found, choose);
}

std::optional<Stage> apply_e2(Tableau& t, const Formula& xi, const RemovalChooser& choose) {
  const auto marks = realization_marks(t, xi);
  std::vector<std::pair<StateIndex, std::optional<Formula>>> found;
  for (StateIndex i : t.live_states())
    if (t.state(i).label.count(xi) && !marks[i]) found.emplace_back(i, xi);
  return remove_one(t, Rule::E2, found, choose);
}

EliminationTrace run_elimination(Tableau& t, const EliminationOptions& opts) {
  const std::vector<Formula> list = opts.eventuality_order ? *opts.eventuality_order : eventualities(t);
  EliminationTrace trace;
  auto record = [&](std::optional<Stage> s) {
    if (!s) return false;
    s->index = trace.size() + 1;
    trace.push_back(*s);
    return true;
  };
  auto successor_rules = [&] {
    bool any = false;
    while (record(apply_e1e(t, opts.choose)) || record(apply_e1t(t, opts.choose))) any = true;
    return any;
  };

  while (true) {
    bool removed = false;
    if (list.empty()) removed = successor_rules();
    for (const auto& xi : list) {
      removed = record(apply_e2(t, xi, opts.choose)) || removed;
      removed = successor_rules() || removed;
    }
    if (!removed) break;
  }
  return trace;
}

AgentUniverse effective_universe(const Formula& theta, const AgentUniverse& universe) {
  AgentUniverse u = universe;
  const Coalition used = agents_of(theta);
  if (!used.subset_of(u.all())) throw Error("formula mentions agents outside the agent universe");
  if (!used.empty()) {
    for (char c = 'a'; u.size() < 2 && c <= 'z'; ++c)
      if (!u.find(std::string(1, c))) u.intern(std::string(1, c));
  }
  return u;
}

Decision decide(const Formula& theta, const AgentUniverse& universe, const DecideConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Pretableau pre = build_pretableau(theta, effective_universe(theta, universe), config.build);
  Tableau initial = eliminate_prestates(pre);
  Tableau final = initial;
  EliminationTrace trace = run_elimination(final, config.elimination);

  Verdict v{Result::Unsat, {}, std::nullopt, std::move(trace)};
  std::vector<StateIndex> holders;
  for (StateIndex i : final.live_states())
    if (final.state(i).label.count(theta)) holders.push_back(i);
  if (!holders.empty()) {
    v.result = Result::Sat;
    v.witness = by_label(final, holders).front();
  }
  v.stats.prestates = pre.prestate_count();
  v.stats.pretableau_states = pre.state_count();
  v.stats.initial_states = initial.states().size();
  v.stats.final_states = final.live_count();
  v.stats.stages = v.trace.size();
  v.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return Decision{std::move(pre), std::move(initial), std::move(final), std::move(v)};
}

}  // namespace cmatel
