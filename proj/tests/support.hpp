// Helpers shared by the unit tests.
#pragma once

#include <string>
#include <vector>

#include "cmatel/corpus.hpp"
#include "cmatel/formula.hpp"
#include "cmatel/syntax.hpp"

namespace cmatel::test {

inline Formula parse_in(AgentUniverse& u, const std::string& text) { return parse(text, u); }

inline FormulaSet set_of(AgentUniverse& u, const std::vector<std::string>& texts) {
  FormulaSet s;
  for (const auto& t : texts) s.insert(parse(t, u));
  return s;
}

inline std::vector<Formula> random_formulas(RandomSpec spec, std::uint64_t seed, std::size_t n) {
  FormulaGenerator gen(spec, seed);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen.next());
  return out;
}

}  // namespace cmatel::test
