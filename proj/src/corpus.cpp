#include "cmatel/corpus.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "cmatel/certify.hpp"
#include "cmatel/oracle.hpp"
#include "cmatel/syntax.hpp"

namespace cmatel {

std::vector<CorpusCase> parse_corpus(std::istream& in) {
  std::vector<CorpusCase> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string_view rest(line);
    rest.remove_prefix(first);
    Result expect;
    if (rest.starts_with("EXPECT(SAT)")) {
      expect = Result::Sat;
      rest.remove_prefix(11);
    } else if (rest.starts_with("EXPECT(UNSAT)")) {
      expect = Result::Unsat;
      rest.remove_prefix(13);
    } else {
      throw Error("corpus line " + std::to_string(n) + ": expected EXPECT(SAT) or EXPECT(UNSAT)");
    }
    const auto start = rest.find_first_not_of(" \t");
    std::string text(start == std::string_view::npos ? std::string_view{} : rest.substr(start));
    while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.pop_back();
    out.push_back({n, expect, text});
  }
  return out;
}

std::vector<CorpusCase> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read corpus file '" + path + "'");
  return parse_corpus(in);
}

FormulaGenerator::FormulaGenerator(RandomSpec spec, std::uint64_t seed) : spec_(spec), state_(seed) {}

// splitmix64
std::uint64_t FormulaGenerator::draw(std::uint64_t bound) {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return bound == 0 ? z : z % bound;
}

Coalition FormulaGenerator::coalition() {
  const std::uint64_t full = (std::uint64_t{1} << spec_.agents) - 1;
  return Coalition(static_cast<std::uint32_t>(1 + draw(full)));
}

Formula FormulaGenerator::next() { return gen(spec_.depth); }

Formula FormulaGenerator::gen(std::size_t depth) {
  auto leaf = [&] {
    if (draw(12) == 0) return Formula::top();
    return Formula::atom(std::string(1, static_cast<char>('p' + draw(spec_.atoms))));
  };
  // The root is always an operator; below it a subtree stops early with
  // probability 1/5, so sizes spread out instead of piling up at 1.
  if (depth == 0 || (depth < spec_.depth && draw(5) == 0)) return leaf();

  enum Kind { Not, And, Or, Next, Until, Eventually, Always, Dist, Common, Know };
  std::vector<Kind> kinds{Not, And, Or};
  if (spec_.temporal) kinds.insert(kinds.end(), {Next, Until, Eventually, Always});
  if (spec_.epistemic && spec_.agents > 0) kinds.insert(kinds.end(), {Dist, Common, Know});

  const std::size_t d = depth - 1;
  switch (kinds[draw(kinds.size())]) {
    case Not:
      return Formula::negation(gen(d));
    case And: {
      Formula l = gen(d);
      return Formula::conj(l, gen(d));
    }
    case Or: {
      Formula l = gen(d);
      return Formula::negation(Formula::conj(Formula::negation(l), Formula::negation(gen(d))));
    }
    case Next:
      return Formula::next(gen(d));
    case Until: {
      Formula l = gen(d);
      return Formula::until(l, gen(d));
    }
    case Eventually:
      return Formula::until(Formula::top(), gen(d));
    case Always:
      return Formula::negation(Formula::until(Formula::top(), Formula::negation(gen(d))));
    case Dist: {
      Coalition c = coalition();
      return Formula::dk(c, gen(d));
    }
    case Common: {
      Coalition c = coalition();
      return Formula::ck(c, gen(d));
    }
    case Know: {
      Coalition c = Coalition::singleton(static_cast<AgentId>(draw(spec_.agents)));
      return Formula::dk(c, gen(d));
    }
  }
  return leaf();
}

AgentUniverse letters_universe(std::size_t n) {
  AgentUniverse u(std::max<std::size_t>(n, 8));
  for (std::size_t i = 0; i < n; ++i) u.intern(std::string(1, static_cast<char>('a' + i)));
  return u;
}

CaseOutcome run_case(const CorpusCase& c, const SuiteConfig& config) {
  CaseOutcome out;
  out.input = c;
  AgentUniverse u(config.agent_capacity);
  try {
    for (const auto& a : config.agents) u.intern(a);
    Formula f = parse(c.text, u);
    out.parsed = true;
    out.formula_size = f.size();
    Decision d = decide(f, u, config.decide);
    out.got = d.verdict.result;
    out.stats = d.verdict.stats;
    if (config.certify && out.got == Result::Sat) {
      CertificateReport rep = check_certificate(d.final);
      out.certified = rep.pass();
      if (!rep.pass())
        out.error = std::string("certificate violation ") + condition_name(rep.violations.front().condition) + ": " +
                    rep.violations.front().detail;
    }
    out.passed = out.got == c.expect && out.certified;
    if (out.got != c.expect) out.error = "expected " + std::string(c.expect == Result::Sat ? "SAT" : "UNSAT");
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

namespace {

bool sat(const Formula& f, const AgentUniverse& u, const DecideConfig& config) {
  return decide(f, u, config).verdict.result == Result::Sat;
}

}  // namespace

PropertyReport check_consistency(const std::vector<Formula>& fs, const AgentUniverse& u, const DecideConfig& config) {
  PropertyReport r;
  for (const auto& f : fs) {
    ++r.checked;
    if (!sat(f, u, config) && !sat(Formula::negation(f), u, config))
      r.failures.push_back({"consistency", render(f, u), "both the formula and its negation are UNSAT"});
  }
  return r;
}

PropertyReport check_mode_equivalence(const std::vector<Formula>& fs, const AgentUniverse& u,
                                      const DecideConfig& config) {
  PropertyReport r;
  DecideConfig sync = config, async = config;
  sync.build.sync = SyncMode::Synchronous;
  async.build.sync = SyncMode::Asynchronous;
  for (const auto& f : fs) {
    ++r.checked;
    const bool a = sat(f, u, sync), b = sat(f, u, async);
    if (a != b)
      r.failures.push_back({"sync-async", render(f, u), std::string("sync ") + (a ? "SAT" : "UNSAT") + ", async " +
                                                             (b ? "SAT" : "UNSAT")});
  }
  return r;
}

PropertyReport check_ltl_oracle(const std::vector<Formula>& fs, const AgentUniverse& u, const DecideConfig& config,
                                std::size_t max_len) {
  PropertyReport r;
  for (const auto& f : fs) {
    ++r.checked;
    if (sat(f, u, config)) continue;
    OracleAnswer a = ltl_oracle(f, max_len);
    if (a.verdict == OracleVerdict::Sat)
      r.failures.push_back({"ltl-oracle", render(f, u), "decide UNSAT but lasso model " + witness_json(*a.lasso)});
  }
  return r;
}

PropertyReport check_epistemic_oracle(const std::vector<Formula>& fs, const AgentUniverse& u,
                                      const DecideConfig& config, std::size_t max_worlds) {
  PropertyReport r;
  for (const auto& f : fs) {
    ++r.checked;
    if (sat(f, u, config)) continue;
    OracleAnswer a = epistemic_oracle(f, u.size(), max_worlds);
    if (a.verdict == OracleVerdict::Sat)
      r.failures.push_back(
          {"epistemic-oracle", render(f, u), "decide UNSAT but Kripke model " + witness_json(*a.model, a.world, u)});
  }
  return r;
}

std::vector<ScalingRow> scaling_table(const std::vector<CaseOutcome>& outcomes) {
  std::map<std::size_t, ScalingRow> rows;
  for (const auto& o : outcomes) {
    if (!o.parsed) continue;
    auto& row = rows.try_emplace(o.formula_size, ScalingRow{o.formula_size, 0, 0, 0.0, 0.0}).first->second;
    const std::size_t nodes = o.stats.prestates + o.stats.pretableau_states;
    row.mean_nodes = (row.mean_nodes * static_cast<double>(row.cases) + static_cast<double>(nodes)) /
                     static_cast<double>(row.cases + 1);
    ++row.cases;
    row.max_nodes = std::max(row.max_nodes, nodes);
    row.max_millis = std::max(row.max_millis, o.stats.millis);
  }
  std::vector<ScalingRow> out;
  for (auto& [k, v] : rows) out.push_back(v);
  return out;
}

void print_scaling_table(std::ostream& os, const std::vector<ScalingRow>& rows) {
  os << "size  cases  max_nodes  mean_nodes  max_ms\n";
  for (const auto& r : rows) {
    os << std::setw(4) << r.formula_size << std::setw(7) << r.cases << std::setw(11) << r.max_nodes << std::setw(12)
       << std::fixed << std::setprecision(1) << r.mean_nodes << std::setw(8) << std::setprecision(2) << r.max_millis
       << '\n';
  }
}

}  // namespace cmatel
