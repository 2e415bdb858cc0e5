// cmatel: satisfiability for LTL with distributed and common knowledge.
//
//   cmatel decide "<formula>" [options]     exit 10 SAT, 20 UNSAT
//   cmatel corpus <file> [options]          exit 0 iff every case passes
//
// Exit 1 on usage or parse errors, 2 when the node budget runs out.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmatel/certify.hpp"
#include "cmatel/corpus.hpp"
#include "cmatel/syntax.hpp"
#include "cmatel/tableau.hpp"

namespace {

using namespace cmatel;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;

struct Options {
  std::string mode = "sync";
  std::string item11 = "strict";
  std::string agents;
  std::size_t budget = 0;
  std::vector<std::string> dots;
  std::string trace;
  bool certify = false;
  bool timing = false;
  std::size_t oracle_bound = 8;
  std::size_t oracle_worlds = 3;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::string summary;
};

std::vector<std::string> split_agents(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string a; std::getline(ss, a, ',');)
    if (!a.empty()) out.push_back(a);
  return out;
}

DecideConfig make_config(const Options& o) {
  DecideConfig c;
  c.build.sync = o.mode == "async" ? SyncMode::Asynchronous : SyncMode::Synchronous;
  c.build.expansion.mode = o.item11 == "paper-example" ? ExpansionMode::PaperExample : ExpansionMode::Strict;
  std::size_t budget = o.budget;
  if (budget == 0) {
    if (const char* env = std::getenv("CMATEL_BUDGET")) budget = std::strtoull(env, nullptr, 10);
  }
  if (budget > 0) c.build.node_budget = budget;
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

int cmd_decide(const std::string& text, const Options& o) {
  AgentUniverse u;
  for (const auto& a : split_agents(o.agents)) u.intern(a);
  const Formula f = parse(text, u);
  const Decision d = decide(f, u, make_config(o));
  const auto& s = d.verdict.stats;

  std::cout << (d.verdict.result == Result::Sat ? "SAT" : "UNSAT") << '\n';
  std::cout << "formula " << render(f, d.pretableau.universe()) << '\n';
  std::cout << "prestates " << s.prestates << " states " << s.pretableau_states << " final " << s.final_states
            << " stages " << s.stages << '\n';
  if (d.verdict.witness) std::cout << "witness Δ" << d.final.state(*d.verdict.witness).ordinal << '\n';
  if (o.timing) std::cout << "time_ms " << s.millis << '\n';

  for (const auto& spec : o.dots) {
    const auto eq = spec.find('=');
    const std::string stage = spec.substr(0, eq);
    const std::string path = eq == std::string::npos ? "-" : spec.substr(eq + 1);
    DotOptions dopt;
    dopt.graph_name = stage;
    if (stage == "pre")
      write_file(path, export_dot(d.pretableau, dopt));
    else if (stage == "initial")
      write_file(path, export_dot(d.initial, dopt));
    else if (stage == "final")
      write_file(path, export_dot(d.final, dopt));
    else
      throw CLI::ValidationError("--dot", "stage must be pre, initial or final");
  }
  if (!o.trace.empty()) write_file(o.trace, export_trace(d));

  if (o.certify && d.verdict.result == Result::Sat) {
    const CertificateReport rep = check_certificate(d.final);
    std::cout << "certificate " << (rep.pass() ? "pass" : "FAIL") << '\n';
    for (const auto& v : rep.violations)
      std::cout << "  " << condition_name(v.condition) << " Δ" << d.final.state(v.state).ordinal << ": " << v.detail
                << '\n';
  }
  return d.verdict.result == Result::Sat ? kExitSat : kExitUnsat;
}

void print_property(const PropertyReport& r, const std::string& name, nlohmann::ordered_json& summary, bool& ok) {
  std::cout << (r.failures.empty() ? "[PASS] " : "[FAIL] ") << name << ": " << r.checked << " formulas, "
            << r.failures.size() << " failures\n";
  for (const auto& f : r.failures) std::cout << "  " << f.formula << " -- " << f.detail << '\n';
  summary["properties"][name] = {{"checked", r.checked}, {"failures", r.failures.size()}};
  ok = ok && r.failures.empty();
}

int cmd_corpus(const std::string& path, const Options& o) {
  const auto cases = load_corpus(path);
  SuiteConfig sc;
  sc.decide = make_config(o);
  sc.agents = split_agents(o.agents);
  sc.certify = true;

  nlohmann::ordered_json summary;
  bool ok = true;
  if (cases.empty()) std::cout << "warning: 0 cases in " << path << '\n';

  std::vector<CaseOutcome> outcomes;
  std::size_t passed = 0;
  for (const auto& c : cases) {
    CaseOutcome out = run_case(c, sc);
    std::cout << (out.passed ? "[PASS] " : "[FAIL] ") << "line " << c.line << ": "
              << (c.expect == Result::Sat ? "EXPECT(SAT) " : "EXPECT(UNSAT) ") << c.text;
    if (out.parsed) std::cout << "  nodes=" << out.stats.prestates + out.stats.pretableau_states;
    if (!out.error.empty()) std::cout << "  -- " << out.error;
    std::cout << '\n';
    passed += out.passed ? 1 : 0;
    outcomes.push_back(std::move(out));
  }
  ok = ok && passed == cases.size();
  summary["cases"] = cases.size();
  summary["passed"] = passed;
  summary["failed"] = cases.size() - passed;

  if (o.random > 0) {
    const AgentUniverse u = letters_universe(2);
    auto batch = [&](RandomSpec spec, std::uint64_t salt) {
      FormulaGenerator gen(spec, o.seed * 0x100000001b3ULL + salt);
      std::vector<Formula> fs;
      for (std::size_t i = 0; i < o.random; ++i) fs.push_back(gen.next());
      return fs;
    };
    const auto mixed = batch(RandomSpec{}, 1);
    print_property(check_consistency(mixed, u, sc.decide), "consistency", summary, ok);
    print_property(check_mode_equivalence(mixed, u, sc.decide), "sync-async", summary, ok);
    print_property(check_ltl_oracle(batch({2, 2, 4, true, false}, 2), u, sc.decide, o.oracle_bound), "ltl-oracle",
                   summary, ok);
    print_property(check_epistemic_oracle(batch({2, 2, 4, false, true}, 3), u, sc.decide, o.oracle_worlds),
                   "epistemic-oracle", summary, ok);
  }

  std::cout << "scaling (formula size vs pretableau nodes" << (o.timing ? " vs time" : "") << ")\n";
  auto rows = scaling_table(outcomes);
  if (!o.timing)
    for (auto& r : rows) r.max_millis = 0;
  print_scaling_table(std::cout, rows);

  summary["ok"] = ok;
  std::cout << summary.dump() << '\n';
  if (!o.summary.empty()) write_file(o.summary, summary.dump(2) + "\n");
  return ok ? 0 : 1;
}

void add_config_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "sync or async")->check(CLI::IsMember({"sync", "async"}));
  cmd->add_option("--item11", o.item11, "strict or paper-example")->check(CLI::IsMember({"strict", "paper-example"}));
  cmd->add_option("--agents", o.agents, "agent universe, e.g. a,b,c");
  cmd->add_option("--budget", o.budget, "pretableau node budget (fallback: $CMATEL_BUDGET)")->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", o.timing, "report wall time");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tableau decision procedure for LTL with distributed and common knowledge"};
  app.require_subcommand(1);
  Options o;
  std::string formula, corpus;

  auto* dec = app.add_subcommand("decide", "decide satisfiability of one formula");
  dec->add_option("formula", formula, "formula text")->required();
  add_config_flags(dec, o);
  dec->add_option("--dot", o.dots, "write DOT for STAGE (pre|initial|final) to FILE: STAGE=FILE");
  dec->add_option("--trace", o.trace, "write the JSON elimination trace");
  dec->add_flag("--certify", o.certify, "audit an open tableau");

  auto* cor = app.add_subcommand("corpus", "run a case file and the property suites");
  cor->add_option("file", corpus, "case file")->required();
  add_config_flags(cor, o);
  cor->add_option("--random", o.random, "random formulas per property suite (0 = skip)");
  cor->add_option("--seed", o.seed, "random seed");
  cor->add_option("--oracle-bound", o.oracle_bound, "maximum lasso length for the LTL oracle")->check(CLI::Range(1, 64));
  cor->add_option("--oracle-worlds", o.oracle_worlds, "maximum worlds for the epistemic oracle")->check(CLI::Range(1, 8));
  cor->add_option("--summary", o.summary, "write the JSON summary to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*dec) return cmd_decide(formula, o);
    return cmd_corpus(corpus, o);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
