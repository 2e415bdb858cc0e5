// cmatel :: pretableau
//
// Phase one of the decision procedure.  Prestates are expanded into states
// (SR); every state gets one epistemic prestate per ~D_A φ it contains (DR)
// and one temporal prestate collecting its X-bodies (Next).  Nodes are
// time-stamped and reused instead of duplicated.

#ifndef CMATEL_PRETABLEAU_HPP_
#define CMATEL_PRETABLEAU_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmatel/formula.hpp"
#include "cmatel/saturation.hpp"

namespace cmatel {

using NodeId = std::size_t;

enum class NodeKind { Prestate, State };
enum class EdgeKind { Expansion, Epistemic, Temporal };

// Synchronous: epistemic prestates are reused only at the same time stamp.
// Asynchronous: stamps play no part in node identity.
enum class SyncMode { Synchronous, Asynchronous };

struct Node {
  NodeKind kind;
  FormulaSet label;
  std::size_t stamp = 0;
  // Display index: Γ0, Γ1, ... for prestates, Δ1, Δ2, ... for states.
  std::size_t ordinal = 0;
};

struct Edge {
  NodeId src;
  NodeId dst;
  EdgeKind kind;
  std::optional<Formula> marker;  // ~D_A φ on epistemic edges
};

struct BuildOptions {
  SyncMode sync = SyncMode::Synchronous;
  ExpansionOptions expansion{ExpansionMode::Strict, ExpansionStrategy::Branching};
  std::size_t node_budget = 100000;
};

class Pretableau {
public:
  Pretableau(Formula theta, AgentUniverse universe, BuildOptions opts);

  const Formula& theta() const { return theta_; }
  const AgentUniverse& universe() const { return universe_; }
  const BuildOptions& options() const { return opts_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<const Edge*> out_edges(NodeId id) const;
  NodeId initial() const { return 0; }

  std::size_t prestate_count() const { return prestates_; }
  std::size_t state_count() const { return nodes_.size() - prestates_; }

  // states(Γ): targets of the expansion edges leaving prestate Γ.
  std::vector<NodeId> states_of(NodeId prestate) const;

  // Rule SR.  Returns states(Γ) in canonical label order.
  std::vector<NodeId> apply_sr(NodeId prestate);
  // Rule DR.  One (marker, prestate) pair per ~D_A φ in the state label.
  std::vector<std::pair<Formula, NodeId>> apply_dr(NodeId state);
  // Rule Next.
  NodeId apply_next(NodeId state);

  // SR applied (prestates) or DR and Next applied (states).
  bool expanded(NodeId id) const;

  // Lines of "G<i>[n] {..}" / "D<i>[n] {..}" plus edges, in creation order.
  std::string serialize() const;

private:
  std::pair<NodeId, bool> intern_prestate(FormulaSet label, std::size_t stamp, bool stamp_matters);
  std::pair<NodeId, bool> intern_state(FormulaSet label, std::size_t stamp);
  NodeId add_node(NodeKind kind, FormulaSet label, std::size_t stamp);
  void add_edge(NodeId src, NodeId dst, EdgeKind kind, std::optional<Formula> marker = std::nullopt);

  Formula theta_;
  AgentUniverse universe_;
  BuildOptions opts_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  // Bit 0: SR, bit 1: DR, bit 2: Next.
  std::vector<unsigned> done_;
  std::size_t prestates_ = 0;
  std::map<FormulaSet, NodeId, FormulaSetLess> state_index_;
  // Prestates by label; each label maps to the stamps it exists at.
  std::map<FormulaSet, std::map<std::size_t, NodeId>, FormulaSetLess> prestate_index_;
};

// Runs SR, DR and Next to a fixpoint from the single prestate {θ} at
// stamp 0.  Throws BudgetError past opts.node_budget nodes.
Pretableau build_pretableau(const Formula& theta, const AgentUniverse& universe, const BuildOptions& opts = {});

}  // namespace cmatel

#endif  // CMATEL_PRETABLEAU_HPP_
