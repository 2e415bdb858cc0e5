#include "cmatel/syntax.hpp"

#include <cctype>
#include <sstream>

namespace cmatel {

namespace {

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

Formula disj(Formula l, Formula r) {
  return Formula::negation(Formula::conj(Formula::negation(std::move(l)), Formula::negation(std::move(r))));
}

Formula implies(Formula l, Formula r) {
  return Formula::negation(Formula::conj(std::move(l), Formula::negation(std::move(r))));
}

class Parser {
public:
  Parser(std::string_view text, AgentUniverse& universe) : text_(text), universe_(universe) {}

  Formula run() {
    Formula f = implication();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  // Identifiers never start with a capital, so a capital is always an
  // operator letter ("XGp" is X G p).
  bool eat_keyword(char c) { return eat(std::string_view(&c, 1)); }

  std::string identifier(const char* what) {
    skip();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Coalition coalition() {
    expect("{");
    skip();
    std::size_t open = pos_;
    if (eat("}")) {
      pos_ = open;
      fail("empty coalition");
    }
    Coalition c;
    do {
      c = c | Coalition::singleton(universe_.intern(identifier("agent name")));
    } while (eat(","));
    expect("}");
    return c;
  }

  Formula implication() {
    Formula l = disjunction();
    if (eat("->")) return implies(std::move(l), implication());
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (eat("|")) l = disj(std::move(l), conjunction());
    return l;
  }

  Formula conjunction() {
    Formula l = until();
    while (eat("&")) l = Formula::conj(std::move(l), until());
    return l;
  }

  Formula until() {
    Formula l = unary();
    if (eat_keyword('U')) return Formula::until(std::move(l), until());
    return l;
  }

  Formula unary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat("~")) return Formula::negation(unary());
    if (eat_keyword('X')) return Formula::next(unary());
    if (eat_keyword('F')) return Formula::until(Formula::top(), unary());
    if (eat_keyword('G')) return Formula::negation(Formula::until(Formula::top(), Formula::negation(unary())));
    if (eat_keyword('K')) {
      AgentId a = universe_.intern(identifier("agent name"));
      return Formula::dk(Coalition::singleton(a), unary());
    }
    if (eat_keyword('D')) {
      Coalition c = coalition();
      return Formula::dk(c, unary());
    }
    if (eat_keyword('C')) {
      Coalition c = coalition();
      return Formula::ck(c, unary());
    }
    if (eat("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    std::string id = identifier("formula");
    if (id == "true") return Formula::top();
    if (id == "false") return Formula::negation(Formula::top());
    return Formula::atom(std::move(id));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  AgentUniverse& universe_;
};

void emit(std::ostream& os, const Formula& f, const AgentUniverse& u, RenderStyle style, bool outer) {
  const bool compact = style == RenderStyle::Compact;
  switch (f.op()) {
    case Op::True:
      os << "true";
      return;
    case Op::Atom:
      os << f.atom_name();
      return;
    case Op::Not:
      os << '~';
      emit(os, f.body(), u, style, false);
      return;
    case Op::Next:
      os << "X ";
      emit(os, f.body(), u, style, false);
      return;
    case Op::Dk:
    case Op::Ck:
      os << (f.is(Op::Dk) ? 'D' : 'C') << render_coalition(f.coalition(), u);
      if (!compact) os << ' ';
      emit(os, f.body(), u, style, false);
      return;
    case Op::And:
    case Op::Until: {
      const bool parens = !(compact && outer);
      if (parens) os << '(';
      emit(os, f.lhs(), u, style, false);
      os << (f.is(Op::And) ? " & " : " U ");
      emit(os, f.rhs(), u, style, false);
      if (parens) os << ')';
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text, AgentUniverse& universe) { return Parser(text, universe).run(); }

std::string render_coalition(Coalition c, const AgentUniverse& universe) {
  std::string out = "{";
  bool first = true;
  for (AgentId a : c.members()) {
    if (!first) out += ',';
    out += a < universe.size() ? universe.name(a) : "#" + std::to_string(a);
    first = false;
  }
  return out + "}";
}

std::string render(const Formula& f, const AgentUniverse& universe, RenderStyle style) {
  std::ostringstream os;
  emit(os, f, universe, style, true);
  return os.str();
}

std::string render(const FormulaSet& s, const AgentUniverse& universe, RenderStyle style) {
  std::string out = "{";
  bool first = true;
  for (const auto& f : s) {
    if (!first) out += ", ";
    out += render(f, universe, style);
    first = false;
  }
  return out + "}";
}

}  // namespace cmatel
