#include "cmatel/pretableau.hpp"

#include <sstream>

#include "cmatel/syntax.hpp"

namespace cmatel {

namespace {

constexpr unsigned kSr = 1, kDr = 2, kNext = 4;

}  // namespace

Pretableau::Pretableau(Formula theta, AgentUniverse universe, BuildOptions opts)
    : theta_(std::move(theta)), universe_(std::move(universe)), opts_(opts) {
  intern_prestate(FormulaSet{theta_}, 0, true);
}

NodeId Pretableau::add_node(NodeKind kind, FormulaSet label, std::size_t stamp) {
  if (nodes_.size() >= opts_.node_budget)
    throw BudgetError("pretableau node budget " + std::to_string(opts_.node_budget) + " exhausted");
  const std::size_t ordinal = kind == NodeKind::Prestate ? prestates_++ : state_count() + 1;
  nodes_.push_back({kind, std::move(label), stamp, ordinal});
  out_.emplace_back();
  done_.push_back(0);
  return nodes_.size() - 1;
}

void Pretableau::add_edge(NodeId src, NodeId dst, EdgeKind kind, std::optional<Formula> marker) {
  out_[src].push_back(edges_.size());
  edges_.push_back({src, dst, kind, std::move(marker)});
}

std::pair<NodeId, bool> Pretableau::intern_prestate(FormulaSet label, std::size_t stamp, bool stamp_matters) {
  auto& at = prestate_index_[label];
  if (stamp_matters) {
    if (auto it = at.find(stamp); it != at.end()) return {it->second, false};
  } else if (!at.empty()) {
    NodeId first = at.begin()->second;
    for (const auto& [s, id] : at) first = std::min(first, id);
    return {first, false};
  }
  NodeId id = add_node(NodeKind::Prestate, std::move(label), stamp);
  at.emplace(stamp, id);
  return {id, true};
}

std::pair<NodeId, bool> Pretableau::intern_state(FormulaSet label, std::size_t stamp) {
  if (auto it = state_index_.find(label); it != state_index_.end()) return {it->second, false};
  NodeId id = add_node(NodeKind::State, label, stamp);
  state_index_.emplace(std::move(label), id);
  return {id, true};
}

bool Pretableau::expanded(NodeId id) const {
  const unsigned want = nodes_.at(id).kind == NodeKind::Prestate ? kSr : (kDr | kNext);
  return (done_.at(id) & want) == want;
}

std::vector<const Edge*> Pretableau::out_edges(NodeId id) const {
  std::vector<const Edge*> out;
  for (std::size_t e : out_.at(id)) out.push_back(&edges_[e]);
  return out;
}

std::vector<NodeId> Pretableau::states_of(NodeId prestate) const {
  std::vector<NodeId> out;
  for (std::size_t e : out_.at(prestate))
    if (edges_[e].kind == EdgeKind::Expansion) out.push_back(edges_[e].dst);
  return out;
}

std::vector<NodeId> Pretableau::apply_sr(NodeId prestate) {
  if (nodes_.at(prestate).kind != NodeKind::Prestate) throw Error("SR applies to prestates only");
  if (done_[prestate] & kSr) throw Error("SR already applied to prestate " + std::to_string(prestate));
  done_[prestate] |= kSr;

  const std::size_t stamp = nodes_[prestate].stamp;
  const Formula x_top = Formula::next(Formula::top());
  std::vector<NodeId> out;
  for (FormulaSet d : full_expansions(nodes_[prestate].label, universe_, opts_.expansion)) {
    const bool has_next = std::any_of(d.begin(), d.end(), [](const Formula& f) { return f.is(Op::Next); });
    if (!has_next) d.insert(x_top);
    NodeId s = intern_state(std::move(d), stamp).first;
    add_edge(prestate, s, EdgeKind::Expansion);
    out.push_back(s);
  }
  return out;
}

std::vector<std::pair<Formula, NodeId>> Pretableau::apply_dr(NodeId state) {
  if (nodes_.at(state).kind != NodeKind::State) throw Error("DR applies to states only");
  if (done_[state] & kDr) throw Error("DR already applied to state " + std::to_string(state));
  done_[state] |= kDr;

  // Copy: interning may reallocate nodes_.
  const FormulaSet label = nodes_[state].label;
  const std::size_t stamp = nodes_[state].stamp;
  const bool sync = opts_.sync == SyncMode::Synchronous;
  std::vector<std::pair<Formula, NodeId>> out;
  for (const auto& chi : label) {
    if (!chi.is_negated(Op::Dk)) continue;
    const Coalition a = chi.body().coalition();
    FormulaSet gamma{Formula::negation(chi.body().body())};
    for (const auto& f : label) {
      const Formula d = f.is(Op::Not) ? f.body() : f;
      if (d.is(Op::Dk) && d.coalition().subset_of(a)) gamma.insert(f);
    }
    NodeId g = intern_prestate(std::move(gamma), stamp, sync).first;
    add_edge(state, g, EdgeKind::Epistemic, chi);
    out.emplace_back(chi, g);
  }
  return out;
}

NodeId Pretableau::apply_next(NodeId state) {
  if (nodes_.at(state).kind != NodeKind::State) throw Error("Next applies to states only");
  if (done_[state] & kNext) throw Error("Next already applied to state " + std::to_string(state));
  done_[state] |= kNext;

  FormulaSet gamma;
  for (const auto& f : nodes_[state].label)
    if (f.is(Op::Next)) gamma.insert(f.body());
  if (gamma.empty()) throw Error("state " + std::to_string(state) + " has no X-formula");
  const std::size_t stamp = nodes_[state].stamp + 1;
  NodeId g = intern_prestate(std::move(gamma), stamp, false).first;
  add_edge(state, g, EdgeKind::Temporal);
  return g;
}

std::string Pretableau::serialize() const {
  std::ostringstream os;
  auto name = [&](NodeId id) {
    const Node& n = nodes_[id];
    return (n.kind == NodeKind::Prestate ? "G" : "D") + std::to_string(n.ordinal);
  };
  for (NodeId id = 0; id < nodes_.size(); ++id)
    os << name(id) << '[' << nodes_[id].stamp << "] " << render(nodes_[id].label, universe_) << '\n';
  for (const auto& e : edges_) {
    os << name(e.src) << (e.kind == EdgeKind::Expansion ? " => " : " -> ") << name(e.dst);
    if (e.marker) os << " : " << render(*e.marker, universe_);
    os << '\n';
  }
  return os.str();
}

Pretableau build_pretableau(const Formula& theta, const AgentUniverse& universe, const BuildOptions& opts) {
  Pretableau p(theta, universe, opts);
  std::vector<NodeId> prestates{p.initial()};
  while (!prestates.empty()) {
    std::vector<NodeId> fresh_states;
    for (NodeId g : prestates)
      for (NodeId s : p.apply_sr(g))
        if (!p.expanded(s) && std::find(fresh_states.begin(), fresh_states.end(), s) == fresh_states.end())
          fresh_states.push_back(s);

    std::vector<NodeId> fresh_prestates;
    auto collect = [&](NodeId g) {
      if (!p.expanded(g) && std::find(fresh_prestates.begin(), fresh_prestates.end(), g) == fresh_prestates.end())
        fresh_prestates.push_back(g);
    };
    for (NodeId s : fresh_states) {
      for (const auto& [chi, g] : p.apply_dr(s)) collect(g);
      collect(p.apply_next(s));
    }
    prestates = std::move(fresh_prestates);
  }
  return p;
}

}  // namespace cmatel
