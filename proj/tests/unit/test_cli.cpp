#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "mlca/dynamics.hpp"
#include "mlca/error.hpp"
#include "mlca_cli/commands.hpp"
#include "support.hpp"

using namespace mlca;
using namespace mlca::cli;
using nlohmann::json;

namespace {

ParseError parse_failure(std::string_view text, std::uint32_t p = 5) {
  try {
    parse_entry(text, PrimeField(p));
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no error for '" << std::string(text) << "'");
  return ParseError("", 0, 0, "");
}

ParseError spec_failure(std::string_view text) {
  try {
    parse_rule_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no error for " << std::string(text));
  return ParseError("", 0, 0, "");
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& rule_json) {
  namespace fs = std::filesystem;
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / ("mlca_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path rule = dir / ("rule" + std::to_string(counter) + ".json");
  const fs::path out = dir / ("out" + std::to_string(counter++) + ".txt");
  std::ofstream(rule) << rule_json;
  const std::string cmd = std::string(MLCA_BINARY) + " " + args + " --rule " + rule.string() + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

}  // namespace

TEST_CASE("entry grammar") {
  const PrimeField f(5);
  CHECK(parse_entry("1 + Z", f) == LaurentPoly::from_terms(f, {{0, 1}, {1, 1}}));
  CHECK(parse_entry("Z^-1 + 2*Z^3", f) == LaurentPoly::from_terms(f, {{-1, 1}, {3, 2}}));
  CHECK(parse_entry("  3*Z^2-Z^2 ", f) == LaurentPoly::from_terms(f, {{2, 2}}));
  CHECK(parse_entry("7", f) == LaurentPoly::constant(f, 2));
  CHECK(parse_entry("0", f).is_zero());
  CHECK(parse_entry("Z - Z", f).is_zero());
  CHECK(parse_entry("3", PrimeField(2)).is_one());
  CHECK(parse_entry("123456789012345678901234567890", f) == LaurentPoly::constant(f, 0));
  CHECK(parse_entry("4*Z^0", f) == LaurentPoly::constant(f, 4));
}

TEST_CASE("entry errors carry positions") {
  auto e = parse_failure("1 + ");
  CHECK(e.column() == 5);
  CHECK(e.token().empty());
  e = parse_failure("1 + X");
  CHECK(e.column() == 5);
  CHECK(e.token() == "X");
  e = parse_failure("-Z");
  CHECK(e.column() == 1);
  e = parse_failure("2*");
  CHECK(e.column() == 3);
  e = parse_failure("Z^");
  CHECK(e.column() == 3);
  e = parse_failure("Z^--1");
  CHECK(e.column() == 4);
  e = parse_failure("2 Z");
  CHECK(e.column() == 3);
  e = parse_failure("Z^99999999999999999999");
  CHECK(e.column() == 3);
  e = parse_failure("");
  CHECK(e.column() == 1);
  CHECK(std::string(e.what()).find("col 1") != std::string::npos);
}

TEST_CASE("entries round-trip through the formatter") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t p = trial % 3 == 0 ? 7 : 2;
    const Rule g = random_rule({p, 2, -3, 3, 3}, rng);
    const auto grid = format_entries(g.matrix());
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) CHECK(parse_entry(grid[i][j], g.field()) == g.matrix()(i, j));
    }
    RuleSpec spec;
    spec.p = p;
    spec.r = 2;
    spec.entries = grid;
    CHECK(build_rule(spec) == g);
    CHECK(spec_from_json(spec_to_json(spec)) == spec);
  }
}

TEST_CASE("rule file validation") {
  const RuleSpec s = parse_rule_spec(R"({"p": 3, "r": 2, "entries": [["Z", "1"], ["1", "0"]], "seed": 4, "n_check": 12})");
  CHECK(s.p == 3);
  CHECK(s.seed == 4u);
  CHECK(s.n_check == 12u);
  CHECK_FALSE(s.l_max.has_value());

  auto e = spec_failure("{\"p\": 2,\n \"r\": 1,\n \"entries\": [[\"1 + \"]]}");
  CHECK(e.line() == 3);
  e = spec_failure(R"({"p": 4, "r": 1, "entries": [["1"]]})");
  CHECK(e.token() == "4");
  e = spec_failure(R"({"p": 2, "r": 2, "entries": [["1"]]})");
  CHECK(e.line() == 1);
  spec_failure(R"({"p": 2, "r": 1})");
  spec_failure(R"({"p": 2, "r": 1, "entries": [["1"]], "blocks": [[["1"]]]})");
  spec_failure(R"({"p": 2, "r": 1, "entries": [["1"]], "colour": 1})");
  spec_failure(R"({"p": 2, "r": 0, "entries": []})");
  spec_failure(R"({"p": 2, "r": 1, "entries": [[1]]})");
  spec_failure(R"({"p": 2, "r": 1, "entries": [["1"]], "n_check": 0})");
  e = spec_failure("{\"p\": 2,\n \"r\": 1,, }");
  CHECK(e.line() == 2);

  const RuleSpec b = parse_rule_spec(R"({"p": 2, "r": 1, "blocks": [[["Z"]], [["1"]]]})");
  CHECK(build_rule(b).bands() == 2);
}

TEST_CASE("analysis report round-trips and is checked") {
  const RuleSpec spec = parse_rule_spec(R"({"p": 2, "r": 2, "entries": [["Z", "1"], ["1", "0"]]})");
  const AnalysisReport r = analyze(spec, {});
  CHECK(r.confined);
  CHECK(r.a == 1);
  CHECK(r.t.at(1) == 1);
  CHECK(r.log_fix_counts[2] == 2);
  CHECK(r.fix_counts[2] == std::optional<std::string>("4"));
  CHECK(r.zeta_kind == "NaturalBoundaryCandidate");
  CHECK(r.orbit_counts.size() == kDefaultOrbitLength);
  CHECK(r.oracle.size() == kOracleIterates);
  for (const auto& v : r.oracle) {
    CHECK(v.sides_agree);
    CHECK(v.within_bound);
  }
  const json j = to_json(r);
  CHECK(report_from_json(j) == r);
  CHECK(report_from_json(json::parse(j.dump())) == r);

  json bad = j;
  bad["log_fix_counts"][3] = 99;
  CHECK_THROWS_AS(report_from_json(bad), InconsistencyError);
  AnalysisReport tampered = r;
  tampered.t[1] = 0;
  CHECK_THROWS_AS(to_json(tampered), InconsistencyError);
}

TEST_CASE("large counts are left out of the decimal column") {
  RuleSpec spec = parse_rule_spec(R"({"p": 3, "r": 1, "entries": [["Z^7"]], "n_check": 20})");
  const AnalysisReport r = analyze(spec, {});
  CHECK(r.log_fix_counts[19] == 140);
  CHECK_FALSE(r.fix_counts[19].has_value());
  CHECK(r.fix_counts[0] == std::optional<std::string>("2187"));
}

TEST_CASE("commands") {
  const RuleSpec shift = parse_rule_spec(R"({"p": 2, "r": 1, "entries": [["Z"]]})");
  CommandOptions o;
  o.lmax = 6;
  const json orbits = cmd_orbits(shift, o);
  CHECK(orbits["orbit_counts"] == json({"2", "1", "2", "3", "6", "9"}));
  CHECK(orbits["normalized_limit"] == "2");
  CHECK(orbits["counting_function"][2]["pi"] == "5");

  o = {};
  o.n = 3;
  CHECK(cmd_fixcount(parse_rule_spec(R"({"p": 2, "r": 1, "entries": [["1 + Z"]]})"), o)["count"] == "4");

  o = {};
  o.config = "[[1],[0],[0],[0]]";
  o.steps = 2;
  const json sim = cmd_simulate(parse_rule_spec(R"({"p": 2, "r": 1, "entries": [["1 + Z"]]})"), o);
  CHECK(sim["states"][1] == json::parse("[[1],[0],[0],[1]]"));
  o.config = "[[1,0]]";
  CHECK_THROWS_AS(cmd_simulate(shift, o), ParseError);

  o = {};
  o.n = 2;
  o.threads = 2;
  const json v = cmd_verify(parse_rule_spec(R"({"p": 3, "r": 1, "entries": [["1 + Z"]], "n_max_field": 4})"), o);
  CHECK(v["passed"] == true);
  CHECK(v["checks"].size() == 6);

  const json c = cmd_companion(parse_rule_spec(R"({"p": 3, "r": 1, "blocks": [[["Z"]], [["2"]]]})"), {});
  CHECK(c["entries"] == json::parse(R"([["Z", "2"], ["1", "0"]])"));
  CHECK_THROWS_AS(cmd_companion(shift, {}), ParseError);
  CHECK_THROWS_AS(cmd_zeta(parse_rule_spec(R"({"p": 2, "r": 1, "entries": [["1"]]})"), {}), NotConfinedError);
}

TEST_CASE("parallel_for keeps results in index order and rethrows") {
  std::vector<int> out(100);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw DomainError("x"); }), DomainError);
}

TEST_CASE("exit codes of the mlca binary") {
  const std::string gauss = R"({"p": 2, "r": 1, "entries": [["Z"]]})";
  auto r = run_cli("orbits --lmax 6", gauss);
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["orbit_counts"][5] == "9");
  CHECK(run_cli("analyze --threads 2", gauss).code == 0);
  CHECK(run_cli("zeta --order 4", gauss).code == 0);
  CHECK(run_cli("simulate --steps 2 --period 5 --seed 3", gauss).code == 0);
  CHECK(run_cli("verify --n 2", gauss).code == 0);
  CHECK(run_cli("fixcount --n 2", R"({"p": 2, "r": 1, "entries": [["1"]]})").code == 1);
  CHECK(run_cli("fixcount --n 2", R"({"p": 2, "r": 1, "entries": [["1 +"]]})").code == 2);
  CHECK(run_cli("fixcount --n 2", R"({"p": 6, "r": 1, "entries": [["1"]]})").code == 2);
  CHECK(run_cli("fixcount", gauss).code == 2);
  CHECK(run_cli("nonsense", gauss).code == 2);
  CHECK(run_cli("companion", gauss).code == 2);
  const auto bad = run_cli("zeta", R"({"p": 2, "r": 1, "entries": [["Z^"]]})");
  CHECK(bad.out.find("col 3") != std::string::npos);
}
