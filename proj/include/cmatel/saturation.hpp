// cmatel :: saturation
//
// Full expansion of prestate labels.  A set is fully expanded when it is
// closed under the eleven local decomposition conditions:
//
//    1  ~~a            ->  a
//    2  a & b          ->  a, b
//    3  ~(a & b)       ->  ~a  |  ~b
//    4  ~X a           ->  X ~a
//    5  a U b          ->  b  |  a, X(a U b)
//    6  ~(a U b)       ->  ~b, ~a  |  ~b, ~X(a U b)
//    7  D_A a          ->  D_B a            for every A ⊆ B ⊆ Σ
//    8  D_A a          ->  a
//    9  C_A a          ->  D_x(a & C_A a)   for every x ∈ A
//   10  ~C_A a         ->  ~D_x(a & C_A a)  for some x ∈ A
//   11  member ψ, D_A a ∈ sub(ψ)  ->  D_A a  |  ~D_A a
//
// Rules 3, 5, 6, 10 and 11 branch; the rest are deterministic.

#ifndef CMATEL_SATURATION_HPP_
#define CMATEL_SATURATION_HPP_

#include <set>
#include <vector>

#include "cmatel/formula.hpp"

namespace cmatel {

enum class ExpansionMode {
  Strict,        // all eleven conditions
  PaperExample,  // condition 11 off, as in the worked example diagram
};

enum class ExpansionStrategy {
  // Set-minimal extensions only, the literal reading.  Too few for the
  // tableau: from {~C{a,b}p, ~D_a(..), D_a p, ..} it never offers the ~D_b
  // step, so a satisfiable formula can close.
  Minimal,
  // Every consistent leaf of the decomposition tree, where each branching
  // condition tries all of its alternatives even when one already holds.
  // This is what rule SR uses.
  Branching,
};

struct ExpansionOptions {
  ExpansionMode mode = ExpansionMode::Strict;
  ExpansionStrategy strategy = ExpansionStrategy::Minimal;
  std::size_t max_branches = 1u << 20;
};

using ExpansionSet = std::set<FormulaSet, FormulaSetLess>;

bool is_patently_inconsistent(const FormulaSet& s);

bool is_fully_expanded(const FormulaSet& s, const AgentUniverse& universe, ExpansionMode mode = ExpansionMode::Strict);

// Which of the numbered conditions fail; empty iff fully expanded.
std::vector<int> violated_conditions(const FormulaSet& s, const AgentUniverse& universe,
                                     ExpansionMode mode = ExpansionMode::Strict);

// All minimal, consistent, fully expanded extensions of `seed`, in
// canonical order.  PaperExample mode drops the minimality filter.
// Throws CapacityError when the branch tree exceeds max_branches.
ExpansionSet full_expansions(const FormulaSet& seed, const AgentUniverse& universe, const ExpansionOptions& opts = {});

}  // namespace cmatel

#endif  // CMATEL_SATURATION_HPP_
