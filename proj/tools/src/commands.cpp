#include "mlca_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "mlca/correspondence.hpp"
#include "mlca/dynamics.hpp"
#include "mlca/error.hpp"
#include "mlca/number_theory.hpp"
#include "mlca/oracle.hpp"

namespace mlca::cli {

using nlohmann::json;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::uint64_t pick_seed(const RuleSpec& spec, const CommandOptions& options) {
  return options.seed.value_or(spec.seed.value_or(0));
}

Rule confined_rule(const RuleSpec& spec) {
  Rule g = build_rule(spec);
  if (!is_confined(g)) throw NotConfinedError("rule is not confined: an eigenvalue of G(Z) is a root of unity");
  return g;
}

json t_table(const Invariants& inv) {
  json t = json::object();
  for (const auto& [d, v] : inv.t) t[std::to_string(d)] = v;
  return t;
}

std::vector<std::string> decimal(std::span<const BigInt> xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_decimal_string(x));
  return out;
}

json cells_json(const PeriodicConfig& cfg) {
  json cells = json::array();
  for (std::size_t i = 0; i < cfg.period(); ++i) {
    const auto c = cfg.cell(static_cast<std::int64_t>(i));
    cells.push_back(std::vector<Residue>(c.begin(), c.end()));
  }
  return cells;
}

PeriodicConfig parse_config(const std::string& text, PrimeField field, std::size_t r) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed --config", 1, e.byte, "");
  }
  if (!j.is_array() || j.empty()) throw ParseError("--config must be a nonempty array of cells", 1, 1, j.dump());
  std::vector<std::vector<std::int64_t>> cells;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != r) {
      throw ParseError("each cell must be an array of " + std::to_string(r) + " integers", 1, 1, c.dump());
    }
    std::vector<std::int64_t> cell;
    for (const auto& v : c) {
      if (!v.is_number_integer()) throw ParseError("cell values must be integers", 1, 1, v.dump());
      cell.push_back(v.get<std::int64_t>());
    }
    cells.push_back(std::move(cell));
  }
  return PeriodicConfig::from_cells(field, cells);
}

}  // namespace

AnalysisReport analyze(const RuleSpec& spec, const CommandOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Rule g = confined_rule(spec);
  AnalysisReport r;
  r.spec = spec;
  r.rule = g.matrix().to_string();
  r.seed = pick_seed(spec, options);
  r.confined = true;

  const Invariants inv = invariants(g, spec.n_check);
  r.a = inv.a;
  r.varpi = inv.varpi;
  r.t = inv.t;
  r.n_checked = inv.n_checked;
  r.log_fix_counts = log_fix_counts(g, inv.n_checked);
  const double digits_per_unit = std::log10(static_cast<double>(spec.p));
  for (const auto e : r.log_fix_counts) {
    if (static_cast<double>(e) * digits_per_unit <= kDecimalDigitLimit) {
      r.fix_counts.emplace_back(to_decimal_string(big_pow(spec.p, static_cast<std::uint64_t>(e))));
    } else {
      r.fix_counts.emplace_back(std::nullopt);
    }
  }

  const auto z = zeta(g, inv, options.order.value_or(kDefaultZetaOrder));
  r.zeta_kind = to_string(z.kind);
  r.zeta_series = decimal(z.truncated_series);

  const std::uint64_t l_max = options.lmax.value_or(spec.l_max.value_or(kDefaultOrbitLength));
  const auto orbits = orbit_counts_from_fix(fix_counts(g, l_max));
  r.orbit_counts = decimal(orbits);
  if (inv.a >= 1) {
    const auto report = asymptotic_report(inv, orbits);
    for (const auto& row : report.rows) {
      r.asymptotics.push_back({row.length, to_decimal_string(row.orbits), row.main_term.str(), fixed6(row.residual_ratio)});
    }
    r.max_residual_ratio = report.max_ratio;
  }

  const std::uint64_t iterates = std::min<std::uint64_t>(kOracleIterates, inv.n_checked);
  r.oracle.resize(iterates);
  LadderOptions ladder;
  ladder.max_dimension = kOracleMaxDimension;
  ladder.field_seed = r.seed;
  parallel_for(iterates, options.threads, [&](std::size_t i) {
    const auto s = stabilized_count(g, i + 1, 0, ladder);
    std::vector<std::size_t> periods;
    for (const auto& step : s.steps) periods.push_back(step.period);
    r.oracle[i] = {i + 1, s.closed_form.value_or(-1), s.exponent, s.attained, s.attained_at, s.sides_agree,
                   s.within_bound, std::move(periods)};
  });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json cmd_analyze(const RuleSpec& spec, const CommandOptions& options) { return to_json(analyze(spec, options)); }

json cmd_fixcount(const RuleSpec& spec, const CommandOptions& options) {
  const Rule g = confined_rule(spec);
  const std::uint64_t n = options.n.value_or(1);
  if (n == 0) throw ParseError("--n must be >= 1", 1, 1, "0");
  const std::int64_t e = log_fix_count(g, n);
  return {{"n", n}, {"log_p_count", e}, {"count", to_decimal_string(big_pow(spec.p, static_cast<std::uint64_t>(e)))}};
}

json cmd_zeta(const RuleSpec& spec, const CommandOptions& options) {
  const Rule g = confined_rule(spec);
  const Invariants inv = invariants(g, spec.n_check);
  const auto z = zeta(g, inv, options.order.value_or(kDefaultZetaOrder));
  return {{"kind", to_string(z.kind)}, {"a", z.a}, {"t", t_table(inv)}, {"series", decimal(z.truncated_series)}};
}

json cmd_orbits(const RuleSpec& spec, const CommandOptions& options) {
  const Rule g = confined_rule(spec);
  const Invariants inv = invariants(g, spec.n_check);
  const std::uint64_t l_max = options.lmax.value_or(spec.l_max.value_or(kDefaultOrbitLength));
  const auto orbits = orbit_counts_from_fix(fix_counts(g, l_max));
  json out = {{"a", inv.a}, {"t", t_table(inv)}, {"orbit_counts", decimal(orbits)}};
  json pi = json::array();
  for (const auto& row : orbit_counting_function(inv, orbits)) {
    pi.push_back({{"x", row.x}, {"pi", to_decimal_string(row.pi)}, {"normalized", to_fixed_string(row.normalized)}});
  }
  out["counting_function"] = pi;
  const bool t_vanishes = std::all_of(inv.t.begin(), inv.t.end(), [](const auto& kv) { return kv.second == 0; });
  if (t_vanishes && inv.a >= 1) {
    const BigInt pa = big_pow(spec.p, static_cast<std::uint64_t>(inv.a));
    out["normalized_limit"] = BigRational(pa, pa - 1).str();
  }
  if (inv.a >= 1) {
    const auto report = asymptotic_report(inv, orbits);
    json rows = json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"length", row.length},
                      {"orbits", to_decimal_string(row.orbits)},
                      {"main_term", row.main_term.str()},
                      {"residual_ratio", fixed6(row.residual_ratio)}});
    }
    out["asymptotics"] = rows;
    out["max_residual_ratio"] = report.max_ratio;
  }
  return out;
}

json cmd_simulate(const RuleSpec& spec, const CommandOptions& options) {
  const Rule g = build_rule(spec);
  PeriodicConfig cfg = [&] {
    if (options.config) return parse_config(*options.config, g.field(), g.bands());
    std::mt19937_64 rng(pick_seed(spec, options));
    return random_config(g.field(), g.bands(), options.period.value_or(16), rng);
  }();
  const std::uint64_t steps = options.steps.value_or(8);
  json states = json::array();
  states.push_back(cells_json(cfg));
  for (std::uint64_t s = 0; s < steps; ++s) {
    cfg = apply(g, cfg);
    states.push_back(cells_json(cfg));
  }
  return {{"rule", g.matrix().to_string()}, {"period", cfg.period()}, {"steps", steps}, {"states", states}};
}

json cmd_verify(const RuleSpec& spec, const CommandOptions& options) {
  const Rule g = build_rule(spec);
  const std::uint64_t n_max = spec.n_max_field.value_or(kDefaultFieldLevel);
  const std::uint64_t seed = pick_seed(spec, options);
  const std::uint64_t iterates = options.n.value_or(kDefaultVerifyIterates);
  if (iterates == 0) throw ParseError("--n must be >= 1", 1, 1, "0");
  const GeneratorChain chain = build_chain(spec.p, n_max, seed);

  std::vector<std::optional<std::int64_t>> closed(iterates);
  const bool confined = is_confined(g);
  if (confined) {
    for (std::uint64_t n = 1; n <= iterates; ++n) closed[n - 1] = log_fix_count(g, n);
  }

  const auto levels = divisors(n_max);
  std::vector<TheoremReport> reports(levels.size() * iterates);
  parallel_for(reports.size(), options.threads, [&](std::size_t i) {
    reports[i] = verify_theorem_main(chain, g, i % iterates + 1, levels[i / iterates]);
  });

  bool passed = true;
  json checks = json::array();
  for (const auto& rep : reports) {
    passed = passed && rep.passed();
    json c = {{"N", rep.period},
              {"n", rep.iterate},
              {"exhaustive", rep.exhaustive},
              {"additivity", rep.additivity},
              {"injectivity", rep.injectivity},
              {"equivariance", rep.equivariance},
              {"image", rep.image},
              {"intertwining", rep.intertwining},
              {"fixed_points", rep.fixed_points},
              {"field_fixed_log", rep.field_fixed_log},
              {"sequence_fixed_log", rep.sequence_fixed_log},
              {"witnesses", rep.witnesses}};
    if (const auto& cf = closed[rep.iterate - 1]) {
      c["closed_form"] = *cf;
      // A level can only undercount: Fix(g^n) restricted to period N is a subgroup.
      if (static_cast<std::int64_t>(rep.field_fixed_log) > *cf) passed = false;
    }
    checks.push_back(std::move(c));
  }

  std::mt19937_64 rng(seed);
  bool shift_ok = true;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<ExtElem> x;
    for (std::size_t i = 0; i < g.bands(); ++i) {
      std::vector<Residue> coords(n_max);
      for (auto& c : coords) c = static_cast<Residue>(rng() % spec.p);
      x.push_back(chain.top_field->element(std::move(coords)));
    }
    for (const std::int64_t k : {std::int64_t{0}, std::int64_t{1}, std::int64_t{4}, static_cast<std::int64_t>(n_max), std::int64_t{-1}}) {
      shift_ok = shift_ok && verify_galois_shift(chain, x, n_max, k);
    }
  }
  passed = passed && shift_ok;

  return {{"n_max", n_max},
          {"seed", seed},
          {"alpha", chain.alpha.as_poly().to_string("x")},
          {"modulus", chain.top_field->modulus().to_string("x")},
          {"confined", confined},
          {"checks", checks},
          {"galois_shift", shift_ok},
          {"passed", passed}};
}

json cmd_companion(const RuleSpec& spec, const CommandOptions&) {
  if (spec.blocks.empty()) throw ParseError("companion needs a rule file with 'blocks'", 1, 1, "");
  const Rule g = build_rule(spec);
  RuleSpec out;
  out.p = spec.p;
  out.r = g.bands();
  out.entries = format_entries(g.matrix());
  out.seed = spec.seed;
  out.n_check = spec.n_check;
  out.l_max = spec.l_max;
  out.n_max_field = spec.n_max_field;
  return spec_to_json(out);
}

}  // namespace mlca::cli
