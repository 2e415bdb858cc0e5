// cmatel :: extended closure
//
// The finite pool every tableau label is drawn from.  Starting from the
// subformulas of θ, their single negations, true and X true, it is closed
// under everything the expansion conditions and the successor rules can put
// into a label.

#ifndef CMATEL_CLOSURE_HPP_
#define CMATEL_CLOSURE_HPP_

#include "cmatel/formula.hpp"

namespace cmatel {

inline constexpr std::size_t kDefaultClosureCap = 1u << 16;

FormulaSet extended_closure(const Formula& theta, const AgentUniverse& universe,
                            std::size_t cap = kDefaultClosureCap);

// The formulas that a single member f directly brings into the closure.
std::vector<Formula> closure_successors(const Formula& f, const AgentUniverse& universe);

// φ ∧ C_A φ, the body of the D_a obligations attached to C_A φ.
Formula ck_unfolding(const Formula& ck);

}  // namespace cmatel

#endif  // CMATEL_CLOSURE_HPP_
