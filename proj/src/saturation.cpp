#include "cmatel/saturation.hpp"

#include <algorithm>

#include "cmatel/closure.hpp"

namespace cmatel {

namespace {

using Alternative = std::vector<Formula>;

struct Obligation {
  int condition;
  std::vector<Alternative> alternatives;
};

void d_subformulas(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Op::Dk)) out.push_back(f);
  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      return;
    case Op::And:
    case Op::Until:
      d_subformulas(f.lhs(), out);
      d_subformulas(f.rhs(), out);
      return;
    default:
      d_subformulas(f.body(), out);
  }
}

std::vector<Obligation> obligations(const Formula& f, const AgentUniverse& universe, ExpansionMode mode) {
  std::vector<Obligation> out;
  switch (f.op()) {
    case Op::And:
      out.push_back({2, {{f.lhs(), f.rhs()}}});
      break;
    case Op::Until:
      out.push_back({5, {{f.rhs()}, {f.lhs(), Formula::next(f)}}});
      break;
    case Op::Dk: {
      Alternative ups;
      for (Coalition c : universe.supersets(f.coalition())) ups.push_back(Formula::dk(c, f.body()));
      out.push_back({7, {std::move(ups)}});
      out.push_back({8, {{f.body()}}});
      break;
    }
    case Op::Ck: {
      Alternative ds;
      const Formula unfold = ck_unfolding(f);
      for (AgentId a : f.coalition().members()) ds.push_back(Formula::dk(Coalition::singleton(a), unfold));
      out.push_back({9, {std::move(ds)}});
      break;
    }
    case Op::Not: {
      const Formula g = f.body();
      switch (g.op()) {
        case Op::Not:
          out.push_back({1, {{g.body()}}});
          break;
        case Op::And:
          out.push_back({3, {{Formula::negation(g.lhs())}, {Formula::negation(g.rhs())}}});
          break;
        case Op::Next:
          out.push_back({4, {{Formula::next(Formula::negation(g.body()))}}});
          break;
        case Op::Until: {
          const Formula not_r = Formula::negation(g.rhs());
          out.push_back({6, {{not_r, Formula::negation(g.lhs())}, {not_r, Formula::negation(Formula::next(g))}}});
          break;
        }
        case Op::Ck: {
          Obligation ob{10, {}};
          const Formula unfold = ck_unfolding(g);
          for (AgentId a : g.coalition().members())
            ob.alternatives.push_back({Formula::negation(Formula::dk(Coalition::singleton(a), unfold))});
          out.push_back(std::move(ob));
          break;
        }
        default:
          break;
      }
      break;
    }
    default:
      break;
  }
  if (mode == ExpansionMode::Strict) {
    std::vector<Formula> ds;
    d_subformulas(f, ds);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    for (const auto& d : ds) out.push_back({11, {{d}, {Formula::negation(d)}}});
  }
  return out;
}

bool satisfied(const Alternative& alt, const FormulaSet& s) {
  return std::all_of(alt.begin(), alt.end(), [&](const Formula& g) { return s.count(g) > 0; });
}

bool satisfied(const Obligation& ob, const FormulaSet& s) {
  return std::any_of(ob.alternatives.begin(), ob.alternatives.end(),
                     [&](const Alternative& alt) { return satisfied(alt, s); });
}

// Adds g, reporting whether the set stays free of complementary pairs.
bool add_consistent(FormulaSet& s, const Formula& g) {
  if (!s.insert(g).second) return true;
  if (s.count(Formula::negation(g))) return false;
  if (g.is(Op::Not) && (s.count(g.body()) || g.body().is(Op::True))) return false;
  return true;
}

struct Branch {
  FormulaSet set;
  FormulaSet done;
};

}  // namespace

bool is_patently_inconsistent(const FormulaSet& s) {
  return std::any_of(s.begin(), s.end(), [&](const Formula& f) {
    return s.count(Formula::negation(f)) > 0 || f.is_negated(Op::True);
  });
}

std::vector<int> violated_conditions(const FormulaSet& s, const AgentUniverse& universe, ExpansionMode mode) {
  std::set<int> bad;
  for (const auto& f : s)
    for (const auto& ob : obligations(f, universe, mode))
      if (!satisfied(ob, s)) bad.insert(ob.condition);
  return {bad.begin(), bad.end()};
}

bool is_fully_expanded(const FormulaSet& s, const AgentUniverse& universe, ExpansionMode mode) {
  for (const auto& f : s)
    for (const auto& ob : obligations(f, universe, mode))
      if (!satisfied(ob, s)) return false;
  return true;
}

ExpansionSet full_expansions(const FormulaSet& seed, const AgentUniverse& universe, const ExpansionOptions& opts) {
  ExpansionSet results;
  if (is_patently_inconsistent(seed)) return results;

  const bool branch_always = opts.strategy == ExpansionStrategy::Branching;
  std::vector<Branch> stack{{seed, {}}};
  std::size_t explored = 0;

  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    if (++explored > opts.max_branches)
      throw BudgetError("expansion branch budget " + std::to_string(opts.max_branches) + " exceeded");

    auto pending = std::find_if(b.set.begin(), b.set.end(), [&](const Formula& f) { return !b.done.count(f); });
    if (pending == b.set.end()) {
      results.insert(std::move(b.set));
      continue;
    }
    const Formula f = *pending;
    b.done.insert(f);

    std::vector<Branch> frontier{std::move(b)};
    for (const auto& ob : obligations(f, universe, opts.mode)) {
      std::vector<Branch> next;
      for (auto& br : frontier) {
        // An obligation already met needs no choice, unless every disjunct
        // is to be tried.
        if (satisfied(ob, br.set) && (!branch_always || ob.alternatives.size() == 1)) {
          next.push_back(std::move(br));
          continue;
        }
        for (const auto& alt : ob.alternatives) {
          Branch nb = br;
          bool ok = true;
          for (const auto& g : alt) ok = ok && add_consistent(nb.set, g);
          if (ok) next.push_back(std::move(nb));
        }
      }
      frontier = std::move(next);
    }
    for (auto it = frontier.rbegin(); it != frontier.rend(); ++it) stack.push_back(std::move(*it));
  }

  if (branch_always) return results;

  ExpansionSet minimal;
  for (const auto& d : results) {
    bool dominated = std::any_of(results.begin(), results.end(), [&](const FormulaSet& e) {
      return e.size() < d.size() && std::includes(d.begin(), d.end(), e.begin(), e.end());
    });
    if (!dominated) minimal.insert(d);
  }
  return minimal;
}

}  // namespace cmatel
