#include "mlca/correspondence.hpp"

#include <map>
#include <random>
#include <sstream>

#include "mlca/error.hpp"
#include "mlca/number_theory.hpp"

namespace mlca {

namespace {

// tr_{N,M} of an element of F_{p^N}, computed inside the top field.
ExtElem subfield_trace(const ExtElem& y, std::size_t n, std::size_t m) {
  ExtElem acc = y.field()->zero();
  for (std::size_t i = 0; i < n / m; ++i) acc += frobenius_power(y, static_cast<std::int64_t>(m * i));
  return acc;
}

void require_level(const GeneratorChain& chain, std::size_t period) {
  if (period == 0 || chain.n_max() % period != 0) {
    throw DomainError("period " + std::to_string(period) + " does not divide N_max = " + std::to_string(chain.n_max()));
  }
}

std::string describe(const std::vector<ExtElem>& x) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i].as_poly().to_string("x");
  }
  os << "]";
  return os.str();
}

std::vector<ExtElem> add(const std::vector<ExtElem>& a, const std::vector<ExtElem>& b) {
  std::vector<ExtElem> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

std::vector<ExtElem> frobenius_all(const std::vector<ExtElem>& x, std::int64_t k) {
  std::vector<ExtElem> out;
  for (const auto& e : x) out.push_back(frobenius_power(e, k));
  return out;
}

// Power of p that equals `count`, or nullopt.
std::optional<std::size_t> log_exact(std::uint64_t count, std::uint32_t p) {
  std::size_t e = 0;
  while (count > 1 && count % p == 0) {
    count /= p;
    ++e;
  }
  if (count != 1) return std::nullopt;
  return e;
}

// Every period-N configuration; index digits give the cell values.
std::vector<PeriodicConfig> all_configs(PrimeField f, std::size_t r, std::size_t period, std::uint64_t total) {
  std::vector<PeriodicConfig> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Residue> v(r * period);
    std::uint64_t rest = idx;
    for (auto& c : v) {
      c = static_cast<Residue>(rest % f.p());
      rest /= f.p();
    }
    out.emplace_back(f, r, period, std::move(v));
  }
  return out;
}

struct Checker {
  const GeneratorChain& chain;
  const Rule& rule;
  const Rule rule_n;
  std::size_t period;
  TheoremReport& report;

  void fail(bool& flag, const std::string& what) {
    if (flag) report.witnesses.push_back(what);
    flag = false;
  }

  PeriodicConfig image(const std::vector<ExtElem>& x) const { return iota(chain, x, period); }

  void pointwise(const std::vector<ExtElem>& x) {
    const PeriodicConfig y = image(x);
    if (!(image(frobenius_all(x, 1)) == shift_by(y, 1))) {
      fail(report.equivariance, "equivariance fails at x = " + describe(x));
    }
    if (!(image(apply_sigma(rule, x)) == apply(rule, y))) {
      fail(report.intertwining, "iota(sigma x) != g(iota x) at x = " + describe(x));
    }
  }

  void additive(const std::vector<ExtElem>& x, const std::vector<ExtElem>& z) {
    if (!(image(add(x, z)) == image(x) + image(z))) {
      fail(report.additivity, "additivity fails at x = " + describe(x) + ", y = " + describe(z));
    }
  }
};

}  // namespace

GeneratorChain build_chain(std::uint32_t p, std::size_t n_max, std::uint64_t seed) {
  if (n_max == 0) throw DomainError("N_max must be >= 1");
  const auto top = ExtField::random(p, n_max, seed);
  GeneratorChain chain{top, find_normal_generator(top, seed), {}, seed, {}};
  if (!is_normal_generator(chain.alpha)) throw InconsistencyError("top-level generator is not normal");
  for (const auto n : divisors(n_max)) {
    const ExtElem a = rel_trace(chain.alpha, n);
    if (!is_normal_in_subfield(a, n)) {
      throw InconsistencyError("trace of a normal generator to degree " + std::to_string(n) + " is not normal");
    }
    chain.alpha_at.emplace(n, a);
  }
  for (const auto& [n, an] : chain.alpha_at) {
    for (const auto m : divisors(n)) {
      if (!(subfield_trace(an, n, m) == chain.alpha_at.at(m))) {
        throw InconsistencyError("chain is not trace compatible between degrees " + std::to_string(n) + " and " +
                                 std::to_string(m));
      }
    }
  }
  ExtElem power = chain.top_field->one();
  const ExtElem x = chain.top_field->generator();
  for (std::size_t k = 0; k < n_max; ++k) {
    chain.trace_form.push_back(abs_trace(chain.alpha * power));
    power = power * x;
  }
  return chain;
}

Residue alpha_trace(const GeneratorChain& chain, const ExtElem& y) {
  const auto& f = chain.top_field->prime_field();
  Residue acc = 0;
  const auto c = y.coords();
  for (std::size_t k = 0; k < c.size(); ++k) acc = f.add(acc, f.mul(chain.trace_form[k], c[k]));
  return acc;
}

PeriodicConfig iota(const GeneratorChain& chain, const std::vector<ExtElem>& x, std::size_t period) {
  require_level(chain, period);
  if (x.empty()) throw DomainError("iota needs at least one coordinate");
  for (const auto& e : x) {
    if (e.field() != chain.top_field) throw DomainError("coordinate does not belong to the chain's top field");
    if (!in_subfield(e, period)) throw DomainError("coordinate is not in F_{p^" + std::to_string(period) + "}");
  }
  const std::size_t r = x.size();
  std::vector<Residue> v(r * period);
  std::vector<ExtElem> y = x;
  for (std::size_t j = 0; j < period; ++j) {
    for (std::size_t i = 0; i < r; ++i) {
      v[j * r + i] = alpha_trace(chain, y[i]);
      if (j + 1 < period) y[i] = frobenius_power(y[i], 1);
    }
  }
  return PeriodicConfig(chain.top_field->prime_field(), r, period, std::move(v));
}

std::vector<ExtElem> apply_sigma(const Rule& rule, const std::vector<ExtElem>& x) {
  if (x.size() != rule.bands()) throw DomainError("sigma needs r coordinates");
  const auto& field = x.front().field();
  if (field->characteristic() != rule.p()) throw DomainError("rule and field disagree on p");
  const std::size_t r = x.size();
  std::vector<ExtElem> out(r, field->zero());
  if (!rule.window()) return out;
  for (std::int64_t j = rule.window()->e_min; j <= rule.window()->e_max; ++j) {
    const auto m = rule.local_matrix(j);
    const auto fx = frobenius_all(x, j);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        if (m[a * r + b] != 0) out[a] += fx[b].scaled(m[a * r + b]);
      }
    }
  }
  return out;
}

std::vector<ExtElem> subfield_elements(const ExtFieldPtr& field, std::size_t sub_degree) {
  const auto basis = subfield_basis(field, sub_degree);
  const std::uint32_t p = field->characteristic();
  const std::uint64_t q = checked_pow(p, sub_degree);
  std::vector<ExtElem> out;
  out.reserve(q);
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    ExtElem e = field->zero();
    std::uint64_t rest = idx;
    for (const auto& b : basis) {
      const auto c = static_cast<Residue>(rest % p);
      rest /= p;
      if (c) e += b.scaled(c);
    }
    out.push_back(std::move(e));
  }
  return out;
}

TheoremReport verify_theorem_main(const GeneratorChain& chain, const Rule& rule, std::uint64_t n, std::size_t period,
                                  const VerifyOptions& options) {
  require_level(chain, period);
  if (n == 0) throw DomainError("iterate count must be >= 1");
  if (rule.p() != chain.top_field->characteristic()) throw DomainError("rule and chain disagree on p");
  const std::uint32_t p = rule.p();
  const std::size_t r = rule.bands();
  const PrimeField f = rule.field();

  TheoremReport report;
  report.period = period;
  report.iterate = n;
  Checker check{chain, rule, iterate(rule, n), period, report};

  const auto basis = subfield_basis(chain.top_field, period);
  std::vector<std::vector<ExtElem>> generators;
  for (std::size_t i = 0; i < r; ++i) {
    for (const auto& b : basis) {
      std::vector<ExtElem> g(r, chain.top_field->zero());
      g[i] = b;
      generators.push_back(std::move(g));
    }
  }

  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < r * period && small; ++i) {
    total *= p;
    small = total <= options.exhaustive_bound;
  }
  report.exhaustive = small;

  if (report.exhaustive) {
    const auto elems = subfield_elements(chain.top_field, period);
    const std::uint64_t q = elems.size();
    std::map<std::vector<Residue>, std::uint64_t> seen;
    std::vector<PeriodicConfig> fixed_images;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<ExtElem> x;
      for (std::uint64_t rest = idx, i = 0; i < r; ++i, rest /= q) x.push_back(elems[rest % q]);
      const PeriodicConfig y = check.image(x);
      const std::vector<Residue> key(y.values().begin(), y.values().end());
      if (auto [it, fresh] = seen.emplace(key, idx); !fresh) {
        check.fail(report.injectivity, "iota(x) = iota(x') for x = " + describe(x));
      }
      check.pointwise(x);
      for (const auto& g : generators) check.additive(x, g);
      if (apply_sigma(check.rule_n, x) == x) fixed_images.push_back(y);
    }
    if (seen.size() != total) check.fail(report.image, "image has " + std::to_string(seen.size()) + " elements");

    std::vector<PeriodicConfig> fixed_configs;
    const FpMatrix tn = transition_matrix(check.rule_n, period);
    for (const auto& cfg : all_configs(f, r, period, total)) {
      if (tn.apply(cfg.values()) == std::vector<Residue>(cfg.values().begin(), cfg.values().end())) {
        fixed_configs.push_back(cfg);
      }
    }
    const auto lf = log_exact(fixed_images.size(), p), ls = log_exact(fixed_configs.size(), p);
    report.field_fixed_log = lf.value_or(0);
    report.sequence_fixed_log = ls.value_or(0);
    std::map<std::vector<Residue>, int> match;
    for (const auto& y : fixed_images) match[{y.values().begin(), y.values().end()}] += 1;
    for (const auto& y : fixed_configs) match[{y.values().begin(), y.values().end()}] += 2;
    if (!lf || !ls || fixed_images.size() != fixed_configs.size()) {
      check.fail(report.fixed_points, "field side has " + std::to_string(fixed_images.size()) +
                                          " fixed points, sequence side " + std::to_string(fixed_configs.size()));
    }
    for (const auto& [key, tag] : match) {
      if (tag != 3) check.fail(report.fixed_points, "fixed sets differ at a configuration");
    }
    return report;
  }

  // Sampling plus linear algebra.
  std::mt19937_64 rng(options.sample_seed);
  auto random_vector = [&] {
    std::uniform_int_distribution<Residue> dist(0, p - 1);
    std::vector<ExtElem> x(r, chain.top_field->zero());
    for (std::size_t i = 0; i < r; ++i) {
      for (const auto& b : basis) x[i] += b.scaled(dist(rng));
    }
    return x;
  };
  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto x = random_vector(), z = random_vector();
    check.pointwise(x);
    check.additive(x, z);
  }

  const std::size_t dim = r * period;
  FpMatrix iota_matrix(f, dim, dim);
  for (std::size_t c = 0; c < generators.size(); ++c) iota_matrix.set_column(c, check.image(generators[c]).values());
  if (iota_matrix.rank() != dim) {
    check.fail(report.injectivity, "iota has rank " + std::to_string(iota_matrix.rank()) + " < " + std::to_string(dim));
    check.fail(report.image, "image is a proper subspace");
  }

  // Field side in top-field coordinates: columns are sigma^n(g) - g.
  const std::size_t top = chain.n_max();
  FpMatrix field_side(f, r * top, dim);
  for (std::size_t c = 0; c < generators.size(); ++c) {
    const auto s = apply_sigma(check.rule_n, generators[c]);
    std::vector<Residue> col;
    for (std::size_t i = 0; i < r; ++i) {
      const auto d = s[i] - generators[c][i];
      col.insert(col.end(), d.coords().begin(), d.coords().end());
    }
    field_side.set_column(c, col);
  }
  const auto kernel = field_side.kernel_basis();
  const FpMatrix seq = transition_matrix(check.rule_n, period) - FpMatrix::identity(f, dim);
  report.field_fixed_log = kernel.size();
  report.sequence_fixed_log = seq.nullity();
  if (report.field_fixed_log != report.sequence_fixed_log) {
    check.fail(report.fixed_points, "field side nullity " + std::to_string(report.field_fixed_log) +
                                        ", sequence side nullity " + std::to_string(report.sequence_fixed_log));
  }
  // iota is injective, so kernel vectors landing in Fix(g^n) plus equal
  // dimensions give the bijection.
  for (const auto& v : kernel) {
    std::vector<ExtElem> x(r, chain.top_field->zero());
    for (std::size_t c = 0; c < generators.size(); ++c) {
      if (!v[c]) continue;
      for (std::size_t i = 0; i < r; ++i) x[i] += generators[c][i].scaled(v[c]);
    }
    const PeriodicConfig y = check.image(x);
    if (!(apply(check.rule_n, y) == y)) check.fail(report.fixed_points, "iota(x) is not fixed for x = " + describe(x));
  }
  return report;
}

bool verify_galois_shift(const GeneratorChain& chain, const std::vector<ExtElem>& x, std::size_t period, std::int64_t k) {
  return iota(chain, frobenius_all(x, k), period) == shift_by(iota(chain, x, period), k);
}

}  // namespace mlca
