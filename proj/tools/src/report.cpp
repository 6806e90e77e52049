#include "mlca_cli/report.hpp"

#include "mlca/dynamics.hpp"
#include "mlca/error.hpp"
#include "mlca/number_theory.hpp"

namespace mlca::cli {

using nlohmann::json;

json spec_to_json(const RuleSpec& spec) {
  json j;
  j["p"] = spec.p;
  j["r"] = spec.r;
  if (spec.blocks.empty()) {
    j["entries"] = spec.entries;
  } else {
    j["blocks"] = spec.blocks;
  }
  if (spec.seed) j["seed"] = *spec.seed;
  if (spec.n_check) j["n_check"] = *spec.n_check;
  if (spec.l_max) j["l_max"] = *spec.l_max;
  if (spec.n_max_field) j["n_max_field"] = *spec.n_max_field;
  return j;
}

RuleSpec spec_from_json(const json& j) { return parse_rule_spec(j.dump()); }

void check_consistency(const AnalysisReport& report) {
  if (!report.confined) return;
  Invariants inv;
  inv.a = report.a;
  inv.varpi = report.varpi;
  inv.t = report.t;
  inv.p = report.spec.p;
  for (std::uint64_t n = 1; n <= report.log_fix_counts.size(); ++n) {
    if (!inv.t.count(gcd_u64(n, inv.varpi)) || inv.predicted_log_count(n) != report.log_fix_counts[n - 1]) {
      throw InconsistencyError("report violates the fixed-point formula at n = " + std::to_string(n));
    }
  }
}

json to_json(const AnalysisReport& r) {
  check_consistency(r);
  json j;
  j["spec"] = spec_to_json(r.spec);
  j["rule"] = r.rule;
  j["confined"] = r.confined;
  json inv;
  inv["a"] = r.a;
  inv["varpi"] = r.varpi;
  json t = json::object();
  for (const auto& [d, v] : r.t) t[std::to_string(d)] = v;
  inv["t"] = t;
  inv["n_checked"] = r.n_checked;
  j["invariants"] = inv;
  j["log_fix_counts"] = r.log_fix_counts;
  json counts = json::array();
  for (const auto& c : r.fix_counts) counts.push_back(c ? json(*c) : json(nullptr));
  j["fix_counts"] = counts;
  j["zeta"] = {{"kind", r.zeta_kind}, {"series", r.zeta_series}};
  j["orbit_counts"] = r.orbit_counts;
  json asym = json::array();
  for (const auto& e : r.asymptotics) {
    asym.push_back({{"length", e.length}, {"orbits", e.orbits}, {"main_term", e.main_term}, {"residual_ratio", e.residual_ratio}});
  }
  j["asymptotics"] = asym;
  j["max_residual_ratio"] = r.max_residual_ratio ? json(*r.max_residual_ratio) : json(nullptr);
  json oracle = json::array();
  for (const auto& v : r.oracle) {
    oracle.push_back({{"n", v.n},
                      {"closed_form", v.closed_form},
                      {"exponent", v.exponent},
                      {"attained", v.attained},
                      {"attained_at", v.attained_at},
                      {"sides_agree", v.sides_agree},
                      {"within_bound", v.within_bound},
                      {"periods", v.periods}});
  }
  j["oracle"] = oracle;
  j["seed"] = r.seed;
  j["timing"] = {{"seconds", r.seconds}};
  return j;
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  r.spec = spec_from_json(j.at("spec"));
  r.rule = j.at("rule").get<std::string>();
  r.confined = j.at("confined").get<bool>();
  const auto& inv = j.at("invariants");
  r.a = inv.at("a").get<std::int64_t>();
  r.varpi = inv.at("varpi").get<std::uint64_t>();
  for (const auto& [d, v] : inv.at("t").items()) r.t[std::stoull(d)] = v.get<std::int64_t>();
  r.n_checked = inv.at("n_checked").get<std::uint64_t>();
  r.log_fix_counts = j.at("log_fix_counts").get<std::vector<std::int64_t>>();
  for (const auto& c : j.at("fix_counts")) {
    r.fix_counts.push_back(c.is_null() ? std::nullopt : std::optional<std::string>(c.get<std::string>()));
  }
  r.zeta_kind = j.at("zeta").at("kind").get<std::string>();
  r.zeta_series = j.at("zeta").at("series").get<std::vector<std::string>>();
  r.orbit_counts = j.at("orbit_counts").get<std::vector<std::string>>();
  for (const auto& e : j.at("asymptotics")) {
    r.asymptotics.push_back({e.at("length").get<std::uint64_t>(), e.at("orbits").get<std::string>(),
                             e.at("main_term").get<std::string>(), e.at("residual_ratio").get<std::string>()});
  }
  if (!j.at("max_residual_ratio").is_null()) r.max_residual_ratio = j.at("max_residual_ratio").get<double>();
  for (const auto& v : j.at("oracle")) {
    r.oracle.push_back({v.at("n").get<std::uint64_t>(), v.at("closed_form").get<std::int64_t>(),
                        v.at("exponent").get<std::size_t>(), v.at("attained").get<bool>(),
                        v.at("attained_at").get<std::size_t>(), v.at("sides_agree").get<bool>(),
                        v.at("within_bound").get<bool>(), v.at("periods").get<std::vector<std::size_t>>()});
  }
  r.seed = j.at("seed").get<std::uint64_t>();
  r.seconds = j.at("timing").at("seconds").get<double>();
  check_consistency(r);
  return r;
}

}  // namespace mlca::cli
