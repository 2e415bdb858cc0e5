#include "cmatel/closure.hpp"

#include <deque>

namespace cmatel {

Formula ck_unfolding(const Formula& ck) { return Formula::conj(ck.body(), ck); }

std::vector<Formula> closure_successors(const Formula& f, const AgentUniverse& universe) {
  std::vector<Formula> out;
  switch (f.op()) {
    case Op::True:
    case Op::Atom:
      break;
    case Op::And:
      out = {f.lhs(), f.rhs()};
      break;
    case Op::Next:
      out = {f.body()};
      break;
    case Op::Until:
      out = {f.lhs(), f.rhs(), Formula::next(f)};
      break;
    case Op::Dk:
      out.push_back(f.body());
      out.push_back(Formula::negation(f));
      for (Coalition c : universe.supersets(f.coalition())) out.push_back(Formula::dk(c, f.body()));
      break;
    case Op::Ck: {
      out.push_back(f.body());
      const Formula unfold = ck_unfolding(f);
      for (AgentId a : f.coalition().members()) out.push_back(Formula::dk(Coalition::singleton(a), unfold));
      break;
    }
    case Op::Not: {
      const Formula g = f.body();
      out.push_back(g);
      switch (g.op()) {
        case Op::Not:
          out.push_back(g.body());
          break;
        case Op::And:
          out.push_back(Formula::negation(g.lhs()));
          out.push_back(Formula::negation(g.rhs()));
          break;
        case Op::Next:
          out.push_back(Formula::next(Formula::negation(g.body())));
          break;
        case Op::Until:
          out.push_back(Formula::negation(g.lhs()));
          out.push_back(Formula::negation(g.rhs()));
          out.push_back(Formula::negation(Formula::next(g)));
          break;
        case Op::Dk:
          out.push_back(Formula::negation(g.body()));
          break;
        case Op::Ck: {
          const Formula unfold = ck_unfolding(g);
          for (AgentId a : g.coalition().members())
            out.push_back(Formula::negation(Formula::dk(Coalition::singleton(a), unfold)));
          break;
        }
        default:
          break;
      }
      break;
    }
  }
  return out;
}

FormulaSet extended_closure(const Formula& theta, const AgentUniverse& universe, std::size_t cap) {
  FormulaSet out;
  std::deque<Formula> work;
  auto add = [&](const Formula& f) {
    if (out.insert(f).second) {
      if (out.size() > cap) throw CapacityError("extended closure exceeds " + std::to_string(cap) + " formulas");
      work.push_back(f);
    }
  };
  for (const auto& f : subformulas(theta)) {
    add(f);
    add(Formula::negation(f));
  }
  add(Formula::top());
  add(Formula::next(Formula::top()));
  while (!work.empty()) {
    Formula f = work.front();
    work.pop_front();
    for (const auto& g : closure_successors(f, universe)) add(g);
  }
  return out;
}

}  // namespace cmatel
