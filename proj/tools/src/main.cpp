#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "mlca_cli/commands.hpp"

namespace {

using namespace mlca;
using namespace mlca::cli;

std::string read_rule_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rule file", 0, 0, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const nlohmann::json& out, const std::string& json_out) {
  const std::string text = out.dump(2);
  if (json_out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream file(json_out);
  if (!file) throw ParseError("cannot write output file", 0, 0, json_out);
  file << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear cellular automata over F_p: fixed points, zeta functions, orbit counts"};
  app.require_subcommand(1);

  std::string rule_path;
  std::string json_out;
  CommandOptions opts;
  std::uint64_t n = 0, order = 0, lmax = 0, seed = 0, steps = 0, period = 0;
  std::string config;

  using Command = std::function<nlohmann::json(const RuleSpec&, const CommandOptions&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const std::string& name, const std::string& help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--rule", rule_path, "rule file (JSON), or - for stdin")->required();
    sub->add_option("--json-out", json_out, "write the JSON result here instead of stdout");
    sub->add_option("--seed", seed, "seed for every random choice");
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };

  auto* analyze_cmd = add("analyze", "invariants, counts, zeta, asymptotics and oracle verdicts", cmd_analyze);
  analyze_cmd->add_option("--order", order, "zeta series order");
  analyze_cmd->add_option("--lmax", lmax, "largest orbit length");
  analyze_cmd->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);

  add("fixcount", "#Fix(g^n)", cmd_fixcount)->add_option("--n", n, "iterate")->required();
  add("zeta", "zeta function classification and series", cmd_zeta)->add_option("--order", order, "series order");
  add("orbits", "periodic orbit counts and counting function", cmd_orbits)->add_option("--lmax", lmax, "largest length");

  auto* simulate_cmd = add("simulate", "iterate the rule on a periodic configuration", cmd_simulate);
  simulate_cmd->add_option("--config", config, "cells as JSON, e.g. [[1,0],[0,1]]");
  simulate_cmd->add_option("--period", period, "period of a random start configuration");
  simulate_cmd->add_option("--steps", steps, "number of steps");

  auto* verify_cmd = add("verify", "check the field/sequence correspondence at finite level", cmd_verify);
  verify_cmd->add_option("--n", n, "largest iterate to check");
  verify_cmd->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);

  add("companion", "expand a block rule file into its companion matrix", cmd_companion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    const auto given = [sub = sub](const std::string& name) {
      const CLI::Option* o = sub->get_option_no_throw(name);
      return o != nullptr && o->count() > 0;
    };
    if (given("--n")) opts.n = n;
    if (given("--order")) opts.order = order;
    if (given("--lmax")) opts.lmax = lmax;
    if (given("--seed")) opts.seed = seed;
    if (given("--steps")) opts.steps = steps;
    if (given("--period")) opts.period = period;
    if (given("--config")) opts.config = config;
    try {
      const RuleSpec spec = parse_rule_spec(read_rule_text(rule_path));
      const nlohmann::json out = fn(spec, opts);
      emit(out, json_out);
      if (sub->get_name() == "verify" && !out.at("passed").get<bool>()) return 1;
      return 0;
    } catch (const ParseError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const DomainError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
