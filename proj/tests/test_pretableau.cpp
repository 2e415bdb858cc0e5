#include <doctest.h>

#include <algorithm>

#include "cmatel/closure.hpp"
#include "cmatel/saturation.hpp"
#include "worked_example.hpp"

using namespace cmatel;
using cmatel::test::WorkedExample;
using cmatel::test::find_node;
using cmatel::test::set_of;

namespace {

std::vector<NodeId> targets(const Pretableau& p, NodeId src, EdgeKind kind) {
  std::vector<NodeId> out;
  for (const Edge* e : p.out_edges(src))
    if (e->kind == kind) out.push_back(e->dst);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("worked example pretableau matches the reference labels") {
  WorkedExample ex;
  const Pretableau p = build_pretableau(ex.theta, ex.u, ex.config().build);
  CHECK(p.prestate_count() == 4);
  CHECK(p.state_count() == 9);

  for (int i = 0; i < 4; ++i) CHECK_MESSAGE(find_node(p, NodeKind::Prestate, ex.gamma[i]), "Γ", i);
  for (int i = 1; i <= 9; ++i) {
    CHECK_MESSAGE(find_node(p, NodeKind::State, ex.expected(i)), "Δ", i);
    // and the bare reference label is contained in some state label
    bool covered = false;
    for (const auto& n : p.nodes())
      covered = covered || (n.kind == NodeKind::State &&
                            std::includes(n.label.begin(), n.label.end(), ex.delta[i].begin(), ex.delta[i].end()));
    CHECK(covered);
  }
  CHECK(p.node(p.initial()).label == ex.gamma[0]);
  CHECK(p.node(p.initial()).stamp == 0);
}

TEST_CASE("worked example edges") {
  WorkedExample ex;
  const Pretableau p = build_pretableau(ex.theta, ex.u, ex.config().build);
  const NodeId g0 = *find_node(p, NodeKind::Prestate, ex.gamma[0]);
  const NodeId g1 = *find_node(p, NodeKind::Prestate, ex.gamma[1]);
  const NodeId g2 = *find_node(p, NodeKind::Prestate, ex.gamma[2]);
  const NodeId g3 = *find_node(p, NodeKind::Prestate, ex.gamma[3]);
  auto d = [&](int i) { return *find_node(p, NodeKind::State, ex.expected(i)); };
  auto sorted = [](std::vector<NodeId> v) {
    std::sort(v.begin(), v.end());
    return v;
  };

  CHECK(targets(p, g0, EdgeKind::Expansion) == sorted({d(1), d(2), d(3)}));
  CHECK(targets(p, g1, EdgeKind::Expansion) == sorted({d(4), d(5), d(6)}));
  CHECK(targets(p, g2, EdgeKind::Expansion) == sorted({d(6), d(7), d(8)}));
  CHECK(targets(p, g3, EdgeKind::Expansion) == std::vector<NodeId>{d(9)});

  // Next: Δ1 and Δ3 loop back to Γ0, Δ2 and Δ9 go to Γ3, the rest to Γ3 too.
  CHECK(targets(p, d(1), EdgeKind::Temporal) == std::vector<NodeId>{g0});
  CHECK(targets(p, d(3), EdgeKind::Temporal) == std::vector<NodeId>{g0});
  CHECK(targets(p, d(2), EdgeKind::Temporal) == std::vector<NodeId>{g3});
  CHECK(targets(p, d(9), EdgeKind::Temporal) == std::vector<NodeId>{g3});

  // DR: Δ6 reuses Γ1 and Γ2
  CHECK(targets(p, d(6), EdgeKind::Epistemic) == sorted({g1, g2}));
  for (const Edge* e : p.out_edges(d(6)))
    if (e->kind == EdgeKind::Epistemic) CHECK(*e->marker == (e->dst == g1 ? ex.chi1 : ex.chi2));
  CHECK(targets(p, d(2), EdgeKind::Epistemic).empty());
  CHECK(targets(p, d(9), EdgeKind::Epistemic).empty());
  CHECK(targets(p, d(1), EdgeKind::Epistemic) == std::vector<NodeId>{g1});

  CHECK(p.node(g3).stamp == 1);
  CHECK(p.node(g1).stamp == 0);
}

TEST_CASE("single rules applied by hand") {
  WorkedExample ex;
  Pretableau p(ex.theta, ex.u, ex.config().build);
  const auto states = p.apply_sr(p.initial());
  REQUIRE(states.size() == 3);
  CHECK_THROWS_AS(p.apply_sr(p.initial()), Error);
  CHECK_THROWS_AS(p.apply_dr(p.initial()), Error);

  NodeId d1 = 0, d2 = 0;
  for (NodeId s : states) {
    if (p.node(s).label == ex.expected(1)) d1 = s;
    if (p.node(s).label == ex.expected(2)) d2 = s;
  }
  REQUIRE(d1 != 0);
  REQUIRE(d2 != 0);

  const auto dr = p.apply_dr(d1);
  REQUIRE(dr.size() == 1);
  CHECK(dr[0].first == ex.chi1);
  CHECK(p.node(dr[0].second).label == ex.gamma[1]);
  CHECK(p.node(dr[0].second).stamp == 0);
  CHECK(p.apply_dr(d2).empty());

  CHECK(p.apply_next(d1) == p.initial());
  const NodeId g3 = p.apply_next(d2);
  CHECK(p.node(g3).label == ex.gamma[3]);
  CHECK(p.node(g3).stamp == 1);
  CHECK_THROWS_AS(p.apply_next(d2), Error);

  const auto nine = p.apply_sr(g3);
  REQUIRE(nine.size() == 1);
  CHECK(p.node(nine[0]).label == ex.delta[9]);
  CHECK(p.apply_next(nine[0]) == g3);
}

TEST_CASE("small pretableaux") {
  AgentUniverse u;
  const Pretableau p = build_pretableau(parse("p", u), u);
  CHECK(p.prestate_count() == 2);
  CHECK(p.state_count() == 2);
  CHECK(find_node(p, NodeKind::State, set_of(u, {"p", "X true"})));
  CHECK(find_node(p, NodeKind::State, set_of(u, {"true", "X true"})));

  const Pretableau q = build_pretableau(parse("p & ~p", u), u);
  CHECK(q.prestate_count() == 1);
  CHECK(q.state_count() == 0);
}

TEST_CASE("node budget is an error, not a truncation") {
  AgentUniverse u;
  BuildOptions opts;
  opts.node_budget = 3;
  CHECK_THROWS_AS(build_pretableau(parse("p U q", u), u, opts), BudgetError);
}

TEST_CASE("structural invariants on random formulas") {
  const AgentUniverse u = letters_universe(2);
  for (const auto& sync : {SyncMode::Synchronous, SyncMode::Asynchronous}) {
    BuildOptions opts;
    opts.sync = sync;
    for (const auto& f : cmatel::test::random_formulas({2, 2, 3, true, true}, 41, 80)) {
      const Pretableau p = build_pretableau(f, u, opts);
      const FormulaSet cl = extended_closure(f, u);
      for (NodeId i = 0; i < p.nodes().size(); ++i) {
        const Node& n = p.node(i);
        CHECK(p.expanded(i));
        for (const auto& g : n.label) CHECK(cl.count(g));
        std::size_t temporal = 0, epistemic = 0;
        for (const Edge* e : p.out_edges(i)) {
          if (e->kind == EdgeKind::Expansion) {
            CHECK(n.kind == NodeKind::Prestate);
            const auto& dst = p.node(e->dst).label;
            CHECK(std::includes(dst.begin(), dst.end(), n.label.begin(), n.label.end()));
          } else {
            CHECK(n.kind == NodeKind::State);
            CHECK(p.node(e->dst).kind == NodeKind::Prestate);
          }
          if (e->kind == EdgeKind::Temporal) ++temporal;
          if (e->kind == EdgeKind::Epistemic) {
            ++epistemic;
            CHECK(e->marker->is_negated(Op::Dk));
            CHECK(n.label.count(*e->marker));
          }
        }
        if (n.kind == NodeKind::State) {
          CHECK(temporal == 1);
          const auto nd = std::count_if(n.label.begin(), n.label.end(), [](const Formula& g) { return g.is_negated(Op::Dk); });
          CHECK(epistemic == static_cast<std::size_t>(nd));
          CHECK(std::any_of(n.label.begin(), n.label.end(), [](const Formula& g) { return g.is(Op::Next); }));
          CHECK(is_fully_expanded(n.label, p.universe()));
          CHECK_FALSE(is_patently_inconsistent(n.label));
        }
      }
    }
  }
}

TEST_CASE("construction is deterministic") {
  const AgentUniverse u = letters_universe(2);
  for (const auto& f : cmatel::test::random_formulas({2, 2, 4, true, true}, 43, 30))
    CHECK(build_pretableau(f, u).serialize() == build_pretableau(f, u).serialize());
}

TEST_CASE("asynchronous mode never has more nodes than synchronous") {
  const AgentUniverse u = letters_universe(2);
  BuildOptions async;
  async.sync = SyncMode::Asynchronous;
  for (const auto& f : cmatel::test::random_formulas({2, 2, 4, true, true}, 47, 60)) {
    const Pretableau s = build_pretableau(f, u), a = build_pretableau(f, u, async);
    CHECK(a.nodes().size() <= s.nodes().size());
  }
}
