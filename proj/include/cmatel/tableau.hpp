// cmatel :: tableau
//
// Prestate elimination turns the pretableau into the initial tableau; the
// state elimination phase then deletes, one state per stage, every state
// that lacks a required successor (E1E, E1T) or carries an unrealized
// eventuality (E2).  θ is satisfiable iff a surviving state contains it.

#ifndef CMATEL_TABLEAU_HPP_
#define CMATEL_TABLEAU_HPP_

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <tuple>
#include <span>
#include <string>
#include <vector>

#include "cmatel/formula.hpp"
#include "cmatel/pretableau.hpp"

namespace cmatel {

// Index into Tableau::states().
using StateIndex = std::size_t;

struct TableauState {
  NodeId origin;  // node in the pretableau
  std::size_t ordinal;
  FormulaSet label;
  bool alive = true;
};

struct EpistemicEdge {
  StateIndex src;
  StateIndex dst;
  Formula marker;
};

struct TemporalEdge {
  StateIndex src;
  StateIndex dst;
};

class Tableau {
public:
  Tableau(Formula theta, AgentUniverse universe, ExpansionMode mode);

  const Formula& theta() const { return theta_; }
  const AgentUniverse& universe() const { return universe_; }
  ExpansionMode expansion_mode() const { return mode_; }

  const std::vector<TableauState>& states() const { return states_; }
  const TableauState& state(StateIndex i) const { return states_.at(i); }
  std::vector<StateIndex> live_states() const;
  std::size_t live_count() const;
  bool alive(StateIndex i) const { return states_.at(i).alive; }

  const std::vector<EpistemicEdge>& epistemic_edges() const { return epistemic_; }
  const std::vector<TemporalEdge>& temporal_edges() const { return temporal_; }
  // Edge indices, including edges to removed states.
  const std::vector<std::size_t>& epistemic_out(StateIndex i) const { return epistemic_out_.at(i); }
  const std::vector<std::size_t>& temporal_out(StateIndex i) const { return temporal_out_.at(i); }

  StateIndex add_state(NodeId origin, std::size_t ordinal, FormulaSet label);
  void add_epistemic(StateIndex src, StateIndex dst, Formula marker);
  void add_temporal(StateIndex src, StateIndex dst);
  void remove(StateIndex i);

private:
  Formula theta_;
  AgentUniverse universe_;
  ExpansionMode mode_;
  std::vector<TableauState> states_;
  std::vector<EpistemicEdge> epistemic_;
  std::vector<TemporalEdge> temporal_;
  std::vector<std::vector<std::size_t>> epistemic_out_;
  std::vector<std::vector<std::size_t>> temporal_out_;
  std::set<std::tuple<StateIndex, StateIndex, Formula>> epistemic_seen_;
  std::set<std::pair<StateIndex, StateIndex>> temporal_seen_;
};

// Rule PR.
Tableau eliminate_prestates(const Pretableau& p);

// Live states at which ξ is realized.  Indexed by StateIndex.
std::vector<bool> realization_marks(const Tableau& t, const Formula& xi);

// All eventualities occurring in live states, in canonical order.
std::vector<Formula> eventualities(const Tableau& t);

enum class Rule { E1E, E1T, E2 };

const char* rule_name(Rule r);

struct Stage {
  std::size_t index;
  Rule rule;
  StateIndex removed;
  std::optional<Formula> why;
};

using EliminationTrace = std::vector<Stage>;

// Picks one of several removable states (given in ascending label order).
using RemovalChooser = std::function<std::size_t(std::span<const StateIndex>)>;

struct EliminationOptions {
  // Overrides the canonical eventuality list; must be a permutation of it.
  std::optional<std::vector<Formula>> eventuality_order;
  // Defaults to the first candidate.
  RemovalChooser choose;
};

// Each apply_* removes at most one state and reports it.
std::optional<Stage> apply_e1e(Tableau& t, const RemovalChooser& choose = {});
std::optional<Stage> apply_e1t(Tableau& t, const RemovalChooser& choose = {});
std::optional<Stage> apply_e2(Tableau& t, const Formula& xi, const RemovalChooser& choose = {});

// Dovetailed E2 / E1E / E1T cycles until a whole cycle removes nothing.
EliminationTrace run_elimination(Tableau& t, const EliminationOptions& opts = {});

enum class Result { Sat, Unsat };

struct Stats {
  std::size_t prestates = 0;
  std::size_t pretableau_states = 0;
  std::size_t initial_states = 0;
  std::size_t final_states = 0;
  std::size_t stages = 0;
  double millis = 0;
};

struct Verdict {
  Result result;
  Stats stats;
  std::optional<StateIndex> witness;
  EliminationTrace trace;
};

struct DecideConfig {
  BuildOptions build;
  EliminationOptions elimination;
};

// Everything produced on the way to a verdict.
struct Decision {
  Pretableau pretableau;
  Tableau initial;
  Tableau final;
  Verdict verdict;
};

// Σ is `universe`, which must name every agent of θ.  An epistemic θ over
// fewer than two agents gets fresh agents appended (see effective_universe).
Decision decide(const Formula& theta, const AgentUniverse& universe, const DecideConfig& config = {});

AgentUniverse effective_universe(const Formula& theta, const AgentUniverse& universe);

}  // namespace cmatel

#endif  // CMATEL_TABLEAU_HPP_
