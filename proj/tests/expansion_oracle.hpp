// Brute-force reference for minimal fully expanded extensions.  The eleven
// conditions are re-stated here from scratch so that the library's
// saturation engine is checked against something it does not share code
// with.  Only the candidate universe (the extended closure) is borrowed.
#pragma once

#include <algorithm>
#include <vector>

#include "cmatel/closure.hpp"
#include "cmatel/formula.hpp"

namespace cmatel::test {

inline bool has(const FormulaSet& s, const Formula& f) { return s.count(f) > 0; }

inline void collect_dk(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Op::Dk)) out.push_back(f);
  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      return;
    case Op::And:
    case Op::Until:
      collect_dk(f.lhs(), out);
      collect_dk(f.rhs(), out);
      return;
    default:
      collect_dk(f.body(), out);
  }
}

inline bool reference_fully_expanded(const FormulaSet& s, const AgentUniverse& u, bool item11) {
  using F = Formula;
  for (const auto& f : s) {
    if (f.is(Op::Not)) {
      const F g = f.body();
      switch (g.op()) {
        case Op::Not:  // 1
          if (!has(s, g.body())) return false;
          break;
        case Op::And:  // 3
          if (!has(s, F::negation(g.lhs())) && !has(s, F::negation(g.rhs()))) return false;
          break;
        case Op::Next:  // 4
          if (!has(s, F::next(F::negation(g.body())))) return false;
          break;
        case Op::Until:  // 6
          if (!has(s, F::negation(g.rhs()))) return false;
          if (!has(s, F::negation(g.lhs())) && !has(s, F::negation(F::next(g)))) return false;
          break;
        case Op::Ck: {  // 10
          bool some = false;
          const F unfold = F::conj(g.body(), g);
          for (AgentId a : g.coalition().members())
            some = some || has(s, F::negation(F::dk(Coalition::singleton(a), unfold)));
          if (!some) return false;
          break;
        }
        default:
          break;
      }
    } else if (f.is(Op::And)) {  // 2
      if (!has(s, f.lhs()) || !has(s, f.rhs())) return false;
    } else if (f.is(Op::Until)) {  // 5
      if (!has(s, f.rhs()) && !(has(s, f.lhs()) && has(s, F::next(f)))) return false;
    } else if (f.is(Op::Dk)) {  // 7, 8
      if (!has(s, f.body())) return false;
      for (std::uint32_t m = 1; m < (std::uint32_t{1} << u.size()); ++m) {
        const Coalition a(m);
        if (f.coalition().subset_of(a) && !has(s, F::dk(a, f.body()))) return false;
      }
    } else if (f.is(Op::Ck)) {  // 9
      const F unfold = F::conj(f.body(), f);
      for (AgentId a : f.coalition().members())
        if (!has(s, F::dk(Coalition::singleton(a), unfold))) return false;
    }
    if (item11) {  // 11
      std::vector<Formula> ds;
      collect_dk(f, ds);
      for (const auto& d : ds)
        if (!has(s, d) && !has(s, F::negation(d))) return false;
    }
  }
  return true;
}

inline bool reference_inconsistent(const FormulaSet& s) {
  for (const auto& f : s)
    if (has(s, Formula::negation(f))) return true;
  return has(s, Formula::negation(Formula::top()));
}

// Every consistent, fully expanded, inclusion-minimal superset of `seed`
// drawn from the closure of its members.  Exponential: keep the closure
// small.
inline std::vector<FormulaSet> reference_expansions(const FormulaSet& seed, const AgentUniverse& u, bool item11,
                                                    std::size_t max_closure = 16) {
  FormulaSet cl;
  for (const auto& f : seed) {
    const FormulaSet c = extended_closure(f, u);
    cl.insert(c.begin(), c.end());
  }
  std::vector<Formula> free;
  for (const auto& f : cl)
    if (!seed.count(f)) free.push_back(f);
  if (free.size() > max_closure) throw Error("reference_expansions: closure too large");

  std::vector<FormulaSet> good;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
    FormulaSet s = seed;
    for (std::size_t i = 0; i < free.size(); ++i)
      if ((bits >> i) & 1) s.insert(free[i]);
    if (!reference_inconsistent(s) && reference_fully_expanded(s, u, item11)) good.push_back(std::move(s));
  }
  std::vector<FormulaSet> minimal;
  for (const auto& s : good) {
    bool dominated = false;
    for (const auto& t : good)
      if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end(), FormulaSetLess{});
  return minimal;
}

}  // namespace cmatel::test

#include "cmatel/corpus.hpp"

namespace cmatel::test {

struct RandomPrestate {
  FormulaSet label;
  std::size_t closure_size;
};

// Seeds {θ} plus up to two further closure members, keeping only draws whose
// closure has at most `max_closure` formulas.
inline std::vector<RandomPrestate> random_prestates(std::size_t n, std::uint64_t seed, const AgentUniverse& u,
                                                    std::size_t max_closure = 12) {
  FormulaGenerator gen({2, u.size(), 3, true, true}, seed);
  std::vector<RandomPrestate> out;
  while (out.size() < n) {
    const Formula theta = gen.next();
    FormulaSet cl;
    try {
      cl = extended_closure(theta, u, max_closure);
    } catch (const CapacityError&) {
      continue;
    }
    if (cl.size() > max_closure) continue;
    const std::vector<Formula> members(cl.begin(), cl.end());
    FormulaSet label{theta};
    const std::size_t extra = gen.draw(3);
    for (std::size_t i = 0; i < extra; ++i) label.insert(members[gen.draw(members.size())]);
    out.push_back({label, cl.size()});
  }
  return out;
}

}  // namespace cmatel::test
