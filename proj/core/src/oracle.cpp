#include "mlca/oracle.hpp"

#include <algorithm>

#include "mlca/dynamics.hpp"
#include "mlca/error.hpp"
#include "mlca/finite_field.hpp"
#include "mlca/laurent_matrix.hpp"
#include "mlca/number_theory.hpp"

namespace mlca {

namespace {

LaurentMatrix coincidence_matrix(const Rule& rule, std::uint64_t n, std::int64_t k) {
  if (n == 0) throw DomainError("iterate count must be >= 1");
  return rule.matrix().pow(n) - LaurentMatrix::shift(rule.field(), rule.bands(), k);
}

void require_period(std::size_t period) {
  if (period == 0) throw DomainError("period must be >= 1");
}

}  // namespace

LinearOperatorFp field_side_operator(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period,
                                     std::uint64_t field_seed) {
  require_period(period);
  const LaurentMatrix h = coincidence_matrix(rule, n, k);
  const auto field = ExtField::random(rule.p(), period, field_seed);
  const auto& f = rule.field();
  const std::size_t r = rule.bands(), dim = r * period;
  FpMatrix out(f, dim, dim);
  const auto lo = h.min_exponent();
  if (!lo) return {OracleSide::Field, n, k, period, std::move(out)};

  // Walk the powers of the Frobenius matrix from F^lo upward.
  const FpMatrix& phi = field->frobenius_matrix();
  const auto np = static_cast<std::int64_t>(period);
  FpMatrix fe = phi.pow(static_cast<std::uint64_t>(((*lo % np) + np) % np));
  for (std::int64_t e = *lo; e <= *h.max_exponent(); ++e) {
    if (e > *lo) fe = phi * fe;
    const auto m = h.coefficient(e);
    if (std::all_of(m.begin(), m.end(), [](Residue x) { return x == 0; })) continue;
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        const Residue c = m[a * r + b];
        if (c == 0) continue;
        for (std::size_t i = 0; i < period; ++i) {
          for (std::size_t j = 0; j < period; ++j) {
            auto& slot = out(a * period + i, b * period + j);
            slot = f.add(slot, f.mul(c, fe(i, j)));
          }
        }
      }
    }
  }
  return {OracleSide::Field, n, k, period, std::move(out)};
}

LinearOperatorFp sequence_side_operator(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period) {
  require_period(period);
  return {OracleSide::Sequence, n, k, period, transition_matrix(Rule(coincidence_matrix(rule, n, k)), period)};
}

std::size_t field_side_count(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period,
                             std::uint64_t field_seed) {
  return field_side_operator(rule, n, k, period, field_seed).matrix.nullity();
}

std::size_t sequence_side_count(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period) {
  return sequence_side_operator(rule, n, k, period).matrix.nullity();
}

std::vector<std::size_t> ladder_periods(std::size_t bands, const LadderOptions& options) {
  std::vector<std::size_t> out;
  std::uint64_t l = 1;
  for (std::size_t j = 1; j <= options.j_max; ++j) {
    l = lcm_u64(l, j);
    if (bands * l > options.max_dimension) break;
    if (out.empty() || out.back() != l) out.push_back(static_cast<std::size_t>(l));
  }
  return out;
}

std::optional<std::uint64_t> certified_period(const Rule& rule, std::uint64_t n, std::int64_t k) {
  const LaurentPoly d = laurent_det(coincidence_matrix(rule, n, k));
  if (d.is_zero()) return std::nullopt;
  const PrimeField& fp = rule.field();
  try {
    std::uint64_t order = 1;
    int multiplicity = 1;
    // d(0) != 0 after removing the Z-power, so Z is a unit modulo every factor.
    for (const auto& [g, e] : factor(d.unit_part().monic())) {
      multiplicity = std::max(multiplicity, e);
      if (*g.degree() == 1) {
        const Residue root = fp.neg(g.coeffs()[0]);
        for (const auto m : divisors(fp.p() - 1)) {
          if (fp.pow(root, m) == 1) {
            order = lcm_u64(order, m);
            break;
          }
        }
      } else {
        order = lcm_u64(order, multiplicative_order(ExtField::create(g)->generator()));
      }
    }
    // A factor of multiplicity e contributes the least p^t >= e (coprime to the rest).
    std::uint64_t pt = 1;
    while (pt < static_cast<std::uint64_t>(multiplicity)) pt *= fp.p();
    return lcm_u64(order, pt);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::vector<std::size_t> certified_ladder(std::uint64_t period, const LadderOptions& options) {
  std::vector<std::size_t> out;
  std::uint64_t l = 1;
  for (std::size_t j = 1; j <= options.j_max; ++j) {
    l = lcm_u64(l, j);
    const auto g = static_cast<std::size_t>(gcd_u64(l, period));
    if (out.empty() || out.back() != g) out.push_back(g);
    if (g == period) break;
  }
  if (out.back() != period) out.push_back(static_cast<std::size_t>(period));
  return out;
}

StabilizedCount stabilized_count(const Rule& rule, std::uint64_t n, std::int64_t k, const LadderOptions& options) {
  StabilizedCount result;
  try {
    result.closed_form = coincidence_log_count(rule, n, k);
  } catch (const NotConfinedError&) {
    result.closed_form.reset();
  }
  std::vector<std::size_t> periods;
  if (options.use_certified_period && result.closed_form) {
    result.certified_period = certified_period(rule, n, k);
    const auto& cp = result.certified_period;
    if (cp && *cp <= options.max_dimension / rule.bands()) periods = certified_ladder(*cp, options);
  }
  if (periods.empty()) periods = ladder_periods(rule.bands(), options);
  for (const auto period : periods) {
    const LadderStep step{period, field_side_count(rule, n, k, period, options.field_seed),
                          sequence_side_count(rule, n, k, period)};
    result.sides_agree = result.sides_agree && step.field_log == step.sequence_log;
    if (!result.steps.empty() && step.field_log < result.steps.back().field_log) result.monotone = false;
    result.steps.push_back(step);
    result.exponent = std::max({result.exponent, step.field_log, step.sequence_log});
    if (result.closed_form) {
      const auto cf = static_cast<std::size_t>(*result.closed_form);
      if (step.field_log > cf || step.sequence_log > cf) result.within_bound = false;
      if (!result.attained && result.exponent == cf) {
        result.attained = true;
        result.attained_at = period;
        if (options.stop_when_attained) break;
      }
    }
  }
  return result;
}

std::vector<PeriodicConfig> exhaustive_config_search(const Rule& rule, std::uint64_t n, std::size_t period,
                                                     std::uint64_t bound) {
  require_period(period);
  const std::uint32_t p = rule.p();
  const std::size_t dim = rule.bands() * period;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= p;
    if (total > bound) throw DomainError("p^(rN) exceeds the enumeration bound");
  }
  const FpMatrix t = transition_matrix(iterate(rule, n), period);
  std::vector<PeriodicConfig> out;
  std::vector<Residue> v(dim, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (t.apply(v) == v) out.emplace_back(rule.field(), rule.bands(), period, v);
    // Increment v as a base-p counter.
    for (std::size_t i = 0; i < dim; ++i) {
      if (++v[i] < p) break;
      v[i] = 0;
    }
  }
  return out;
}

}  // namespace mlca
