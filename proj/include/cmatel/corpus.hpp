// cmatel :: corpus
//
// Curated case files, seeded random formulas, and the property suites run
// over them (verdict consistency, sync/async agreement, oracle agreement,
// scaling table).

#ifndef CMATEL_CORPUS_HPP_
#define CMATEL_CORPUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cmatel/formula.hpp"
#include "cmatel/tableau.hpp"

namespace cmatel {

struct CorpusCase {
  std::size_t line;
  Result expect;
  std::string text;
};

// One case per line: "EXPECT(SAT) <formula>" or "EXPECT(UNSAT) <formula>".
// Blank lines and lines starting with '#' are skipped.  Throws Error on a
// malformed line or unreadable file.
std::vector<CorpusCase> parse_corpus(std::istream& in);
std::vector<CorpusCase> load_corpus(const std::string& path);

struct RandomSpec {
  std::size_t atoms = 2;
  std::size_t agents = 2;
  std::size_t depth = 4;
  bool temporal = true;
  bool epistemic = true;
};

// Deterministic for a given seed on every platform (no std distributions).
class FormulaGenerator {
public:
  FormulaGenerator(RandomSpec spec, std::uint64_t seed);
  Formula next();
  std::uint64_t draw(std::uint64_t bound);

private:
  Formula gen(std::size_t depth);
  Coalition coalition();

  RandomSpec spec_;
  std::uint64_t state_;
};

// Agent universe {a, b, ...} with `n` agents.
AgentUniverse letters_universe(std::size_t n);

struct CaseOutcome {
  CorpusCase input;
  bool parsed = false;
  bool passed = false;
  std::string error;
  Result got = Result::Unsat;
  Stats stats;
  std::size_t formula_size = 0;
  bool certified = true;
};

struct SuiteConfig {
  DecideConfig decide;
  bool certify = true;
  std::size_t agent_capacity = 8;
  std::vector<std::string> agents;  // declared before parsing each case
};

CaseOutcome run_case(const CorpusCase& c, const SuiteConfig& config);

struct PropertyFailure {
  std::string suite;
  std::string formula;
  std::string detail;
};

struct PropertyReport {
  std::size_t checked = 0;
  std::vector<PropertyFailure> failures;
};

// Never decide(φ) = decide(¬φ) = UNSAT.
PropertyReport check_consistency(const std::vector<Formula>& fs, const AgentUniverse& u, const DecideConfig& config);
// Same verdict in synchronous and asynchronous mode.
PropertyReport check_mode_equivalence(const std::vector<Formula>& fs, const AgentUniverse& u,
                                      const DecideConfig& config);
// Oracle SAT implies decide SAT.  Pure-LTL and pure-epistemic inputs only.
PropertyReport check_ltl_oracle(const std::vector<Formula>& fs, const AgentUniverse& u, const DecideConfig& config,
                                std::size_t max_len);
PropertyReport check_epistemic_oracle(const std::vector<Formula>& fs, const AgentUniverse& u,
                                      const DecideConfig& config, std::size_t max_worlds);

struct ScalingRow {
  std::size_t formula_size;
  std::size_t cases;
  std::size_t max_nodes;
  double mean_nodes;
  double max_millis;
};

std::vector<ScalingRow> scaling_table(const std::vector<CaseOutcome>& outcomes);
void print_scaling_table(std::ostream& os, const std::vector<ScalingRow>& rows);

}  // namespace cmatel

#endif  // CMATEL_CORPUS_HPP_
