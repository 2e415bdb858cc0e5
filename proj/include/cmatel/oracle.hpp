// cmatel :: oracle
//
// Brute-force ground truth for two fragments: pure LTL over ultimately
// periodic runs, and pure epistemic formulas over small Kripke models whose
// agent relations are partitions.  Mixed formulas have no oracle.

#ifndef CMATEL_ORACLE_HPP_
#define CMATEL_ORACLE_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmatel/formula.hpp"

namespace cmatel {

using Valuation = std::set<std::string>;

// The run prefix · loop^ω.
struct Lasso {
  std::vector<Valuation> prefix;
  std::vector<Valuation> loop;

  std::size_t length() const { return prefix.size() + loop.size(); }
};

struct KripkeModel {
  std::size_t worlds = 1;
  // blocks[a][w]: block id of world w in agent a's partition.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<Valuation> valuation;
};

enum class OracleVerdict { Sat, UnsatUpToBound, ExhaustivelyUnsat };

struct OracleAnswer {
  OracleVerdict verdict;
  std::size_t bound;
  std::optional<Lasso> lasso;
  std::optional<KripkeModel> model;
  std::size_t world = 0;  // designated world of `model`
};

// Throws Error when f has D/C operators or position is out of range.
bool eval_ltl(const Formula& f, const Lasso& run, std::size_t position = 0);

// Lassos are enumerated by total length, then prefix length, then
// valuations; the first model found is returned.
OracleAnswer ltl_oracle(const Formula& f, std::size_t max_len);

// 2^|closure(f)|, saturating.
std::size_t ltl_completeness_threshold(const Formula& f);

// Throws Error when f has X/U operators or the model lacks an agent of f.
bool eval_epistemic(const Formula& f, const KripkeModel& m, std::size_t world);

// Every model with 1..max_worlds worlds over `agents` partitions and all
// valuations of atoms(f).
OracleAnswer epistemic_oracle(const Formula& f, std::size_t agents, std::size_t max_worlds = 3);

// All set partitions of {0..n-1} as block-id vectors (restricted growth).
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

std::string witness_json(const Lasso& l);
std::string witness_json(const KripkeModel& m, std::size_t world, const AgentUniverse& universe);

}  // namespace cmatel

#endif  // CMATEL_ORACLE_HPP_
