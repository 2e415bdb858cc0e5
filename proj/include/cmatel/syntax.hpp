// cmatel :: concrete syntax
//
//   atoms      [a-z][A-Za-z0-9_]*        agents: same class, inside braces
//   unary      ~ X F G  K <agent>  D{a,..}  C{a,..}     (tightest)
//   binary     U (right)  &  (left)  | (left)  -> (right) (loosest)
//   constants  true false
//
// Sugar is removed while parsing: false = ~true, a|b = ~(~a & ~b),
// a->b = ~(a & ~b), F a = true U a, G a = ~(true U ~a), K x a = D{x} a.

#ifndef CMATEL_SYNTAX_HPP_
#define CMATEL_SYNTAX_HPP_

#include <string>
#include <string_view>

#include "cmatel/formula.hpp"

namespace cmatel {

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// Agents not yet in `universe` are declared in order of first appearance.
Formula parse(std::string_view text, AgentUniverse& universe);

enum class RenderStyle {
  Full,     // fully parenthesized binaries, re-parses to the same tree
  Compact,  // no outer parentheses, no blank after a coalition (diagram labels)
};

std::string render(const Formula& f, const AgentUniverse& universe, RenderStyle style = RenderStyle::Full);
std::string render(const FormulaSet& s, const AgentUniverse& universe, RenderStyle style = RenderStyle::Full);

std::string render_coalition(Coalition c, const AgentUniverse& universe);

}  // namespace cmatel

#endif  // CMATEL_SYNTAX_HPP_
