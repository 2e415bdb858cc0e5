#include <doctest.h>

#include <json.hpp>

#include "cmatel/closure.hpp"
#include "cmatel/oracle.hpp"
#include "support.hpp"

using namespace cmatel;
using cmatel::test::random_formulas;

namespace {

Lasso lasso(std::vector<Valuation> prefix, std::vector<Valuation> loop) { return {std::move(prefix), std::move(loop)}; }

// Direct recursive semantics; every position reachable from n is visited
// within |prefix| + |loop| steps.
bool naive(const Formula& f, const Lasso& r, std::size_t n) {
  const std::size_t P = r.prefix.size(), L = r.loop.size();
  auto norm = [&](std::size_t i) { return i < P ? i : P + (i - P) % L; };
  auto at = [&](std::size_t i) -> const Valuation& { return i < P ? r.prefix[i] : r.loop[i - P]; };
  switch (f.op()) {
    case Op::True:
      return true;
    case Op::Atom:
      return at(norm(n)).count(f.atom_name()) > 0;
    case Op::Not:
      return !naive(f.body(), r, n);
    case Op::And:
      return naive(f.lhs(), r, n) && naive(f.rhs(), r, n);
    case Op::Next:
      return naive(f.body(), r, norm(n + 1));
    case Op::Until:
      for (std::size_t k = 0; k <= P + L; ++k) {
        const std::size_t i = norm(n + k);
        if (naive(f.rhs(), r, i)) return true;
        if (!naive(f.lhs(), r, i)) return false;
      }
      return false;
    default:
      throw Error("naive: epistemic operator");
  }
}

}  // namespace

TEST_CASE("eval_ltl examples") {
  AgentUniverse u;
  CHECK(eval_ltl(parse("p U q", u), lasso({{"p"}}, {{"q"}}), 0));
  CHECK(eval_ltl(parse("G p", u), lasso({}, {{"p"}}), 0));
  CHECK_FALSE(eval_ltl(parse("X ~p", u), lasso({{"p"}}, {{"p"}}), 0));
  CHECK(eval_ltl(parse("G F p", u), lasso({}, {{}, {"p"}}), 0));
  CHECK_FALSE(eval_ltl(parse("F G p", u), lasso({}, {{}, {"p"}}), 0));
  CHECK(eval_ltl(parse("true", u), lasso({}, {{}}), 0));
}

TEST_CASE("eval_ltl errors") {
  AgentUniverse u;
  CHECK_THROWS_AS(eval_ltl(parse("D{a} p", u), lasso({}, {{}}), 0), Error);
  CHECK_THROWS_AS(eval_ltl(parse("p", u), lasso({{}}, {}), 0), Error);
  CHECK_THROWS_AS(eval_ltl(parse("p", u), lasso({}, {{}}), 1), Error);
}

TEST_CASE("eval_ltl agrees with the naive semantics") {
  const auto fs = random_formulas({2, 2, 5, true, false}, 83, 200);
  const std::vector<Lasso> runs{
      lasso({}, {{}}),
      lasso({{"p"}}, {{"q"}}),
      lasso({{"p", "q"}, {}}, {{"p"}, {"q"}, {}}),
      lasso({{"q"}}, {{"p"}, {"p", "q"}}),
  };
  for (const auto& f : fs)
    for (const auto& r : runs)
      for (std::size_t n = 0; n < r.length(); ++n) CHECK(eval_ltl(f, r, n) == naive(f, r, n));
}

TEST_CASE("ltl_oracle") {
  AgentUniverse u;
  const auto until = ltl_oracle(parse("p U q", u), 2);
  REQUIRE(until.verdict == OracleVerdict::Sat);
  CHECK(eval_ltl(parse("p U q", u), *until.lasso, 0));

  const auto contradiction = ltl_oracle(parse("p & ~p", u), 3);
  CHECK(contradiction.verdict != OracleVerdict::Sat);
  CHECK(contradiction.bound == 3);

  CHECK(ltl_oracle(parse("(p U q) & G ~q", u), 6).verdict == OracleVerdict::UnsatUpToBound);
  const Formula bottom = parse("false", u);
  REQUIRE(ltl_completeness_threshold(bottom) <= 64);
  CHECK(ltl_oracle(bottom, ltl_completeness_threshold(bottom)).verdict == OracleVerdict::ExhaustivelyUnsat);
  CHECK_THROWS_AS(ltl_oracle(parse("p", u), 65), Error);
  CHECK_THROWS_AS(ltl_oracle(parse("D{a}p", u), 3), Error);

  // three distinct ~p positions before the first p
  const auto deep = ltl_oracle(parse("~p & X ~p & X X ~p & X X X p", u), 8);
  REQUIRE(deep.verdict == OracleVerdict::Sat);
  CHECK(deep.lasso->length() == 4);
}

TEST_CASE("LTL witnesses re-evaluate") {
  for (const auto& f : random_formulas({2, 2, 4, true, false}, 89, 200)) {
    const auto a = ltl_oracle(f, 5);
    if (a.verdict == OracleVerdict::Sat) CHECK(naive(f, *a.lasso, 0));
  }
}

TEST_CASE("set partitions follow the Bell numbers") {
  CHECK(set_partitions(1).size() == 1);
  CHECK(set_partitions(2).size() == 2);
  CHECK(set_partitions(3).size() == 5);
  CHECK(set_partitions(4).size() == 15);
  for (const auto& p : set_partitions(4)) CHECK(p[0] == 0);
}

TEST_CASE("eval_epistemic examples") {
  AgentUniverse u{"a", "b"};
  // R_a ∩ R_b is the identity
  KripkeModel m;
  m.worlds = 3;
  m.blocks = {{0, 0, 1}, {0, 1, 1}};
  m.valuation = {{"p"}, {"p"}, {}};
  CHECK(eval_epistemic(parse("D{a,b} p", u), m, 0));
  CHECK_FALSE(eval_epistemic(parse("D{b} p", u), m, 1));
  CHECK(eval_epistemic(parse("D{a} p", u), m, 1));
  // w -a- v -b- u with ~p at u
  CHECK(eval_epistemic(parse("~C{a,b} p", u), m, 0));
  CHECK(eval_epistemic(parse("D{a} p & D{b} p", u), m, 0));
  CHECK_THROWS_AS(eval_epistemic(parse("X p", u), m, 0), Error);

  KripkeModel one;
  one.blocks = {{0}};
  one.valuation = {{}};
  CHECK_THROWS_AS(eval_epistemic(parse("D{b} p", u), one, 0), Error);
}

TEST_CASE("single-agent D and C coincide") {
  AgentUniverse u{"a", "b"};
  const Formula iff = parse("(C{a}p -> D{a}p) & (D{a}p -> C{a}p)", u);
  for (const auto& pa : set_partitions(2))
    for (const auto& pb : set_partitions(2))
      for (int val = 0; val < 4; ++val) {
        KripkeModel m;
        m.worlds = 2;
        m.blocks = {pa, pb};
        m.valuation.resize(2);
        for (int w = 0; w < 2; ++w)
          if ((val >> w) & 1) m.valuation[w].insert("p");
        for (std::size_t w = 0; w < 2; ++w) CHECK(eval_epistemic(iff, m, w));
      }
}

TEST_CASE("epistemic_oracle") {
  AgentUniverse u{"a", "b"};
  CHECK(epistemic_oracle(parse("D{a}p & ~p", u), 2, 3).verdict == OracleVerdict::UnsatUpToBound);
  const auto chain = epistemic_oracle(parse("~C{a,b}p & D{a}p & D{b}p", u), 2, 3);
  REQUIRE(chain.verdict == OracleVerdict::Sat);
  CHECK(chain.model->worlds >= 3);
  CHECK(eval_epistemic(parse("~C{a,b}p & D{a}p & D{b}p", u), *chain.model, chain.world));
  const auto two = epistemic_oracle(parse("~C{a,b}p & D{a}p & D{b}p", u), 2, 2);
  CHECK(two.verdict == OracleVerdict::UnsatUpToBound);

  const auto atom = epistemic_oracle(parse("p", u), 2, 3);
  REQUIRE(atom.verdict == OracleVerdict::Sat);
  CHECK(atom.model->worlds == 1);
  CHECK_THROWS_AS(epistemic_oracle(parse("p U q", u), 2, 3), Error);
}

TEST_CASE("epistemic witnesses re-evaluate") {
  const AgentUniverse u = letters_universe(2);
  for (const auto& f : random_formulas({2, 2, 4, false, true}, 97, 200)) {
    const auto a = epistemic_oracle(f, 2, 3);
    if (a.verdict == OracleVerdict::Sat) CHECK(eval_epistemic(f, *a.model, a.world));
  }
}

TEST_CASE("witness JSON") {
  const auto l = nlohmann::json::parse(witness_json(lasso({{"p"}}, {{"q"}, {}})));
  CHECK(l["prefix"] == nlohmann::json::array({nlohmann::json::array({"p"})}));
  CHECK(l["loop"].size() == 2);

  AgentUniverse u{"a", "b"};
  KripkeModel m;
  m.worlds = 2;
  m.blocks = {{0, 0}, {0, 1}};
  m.valuation = {{"p"}, {}};
  const auto k = nlohmann::json::parse(witness_json(m, 1, u));
  CHECK(k["worlds"] == 2);
  CHECK(k["at"] == 2);
  CHECK(k["partitions"]["a"] == nlohmann::json::parse("[[1,2]]"));
  CHECK(k["partitions"]["b"] == nlohmann::json::parse("[[1],[2]]"));
}
