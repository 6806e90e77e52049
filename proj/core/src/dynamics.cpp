#include "mlca/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "mlca/error.hpp"
#include "mlca/finite_field.hpp"
#include "mlca/number_theory.hpp"

namespace mlca {

const char* to_string(Place place) noexcept { return place == Place::AtZero ? "at_zero" : "at_infinity"; }

const char* to_string(ZetaKind kind) noexcept {
  return kind == ZetaKind::Rational ? "Rational" : "NaturalBoundaryCandidate";
}

namespace {

struct HullPoint {
  std::int64_t j;
  std::int64_t v;
};

std::int64_t place_valuation(const LaurentPoly& c, Place place) { return place == Place::AtZero ? c.val() : -c.deg(); }

// Coefficient of the lowest term at the place (Z^v at zero, Z^-v at infinity).
Residue place_residue(const LaurentPoly& c, Place place) {
  return place == Place::AtZero ? c.coeff(c.val()) : c.coeff(c.deg());
}

std::size_t leading_zeros(std::span<const LaurentPoly> chi) {
  std::size_t k = 0;
  while (k < chi.size() && chi[k].is_zero()) ++k;
  return k;
}

std::vector<HullPoint> lower_hull(std::span<const LaurentPoly> chi, Place place) {
  if (chi.empty() || !chi.back().is_one()) throw DomainError("newton polygon needs a monic polynomial");
  std::vector<HullPoint> hull;
  for (std::size_t j = leading_zeros(chi); j < chi.size(); ++j) {
    if (chi[j].is_zero()) continue;
    const HullPoint q{static_cast<std::int64_t>(j), place_valuation(chi[j], place)};
    // Pop while the last two points and q fail to make a strict left turn.
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const std::int64_t cross = (a.j - o.j) * (q.v - o.v) - (a.v - o.v) * (q.j - o.j);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }
  return hull;
}

std::vector<LaurentPoly> rule_char_poly(const Rule& rule) { return char_poly(rule.matrix()); }

LaurentMatrix minus_identity(const LaurentMatrix& m, std::int64_t k = 0) {
  return m - LaurentMatrix::shift(m.field(), m.dim(), k);
}

std::int64_t log_count_of(const LaurentMatrix& m, std::int64_t k) {
  const LaurentPoly d = laurent_det(minus_identity(m, k));
  if (d.is_zero()) throw NotConfinedError("determinant vanishes: infinitely many fixed points");
  return d.deg() - d.val();
}

// Multiplicative order of a root of the monic irreducible f (f != X).
std::uint64_t root_order(const Poly& f) {
  const auto field = ExtField::create(f);
  return multiplicative_order(field->generator());
}

// h(lambda) = gcd_k d_k(lambda) where chi(Z, lambda) = sum_k d_k(lambda) Z^k.
Poly z_coefficient_gcd(std::span<const LaurentPoly> chi, PrimeField f) {
  std::int64_t lo = 0, hi = 0;
  bool any = false;
  for (const auto& c : chi) {
    if (c.is_zero()) continue;
    lo = any ? std::min(lo, c.val()) : c.val();
    hi = any ? std::max(hi, c.deg()) : c.deg();
    any = true;
  }
  Poly h(f);
  for (std::int64_t k = lo; k <= hi; ++k) {
    std::vector<Residue> d(chi.size(), 0);
    for (std::size_t j = 0; j < chi.size(); ++j) d[j] = chi[j].coeff(k);
    h = gcd(h, Poly(f, std::move(d)));
  }
  return h;
}

bool is_power_of_x(const Poly& h) {
  const auto d = h.degree();
  return d && h == Poly::monomial(h.field(), 1, *d);
}

constexpr std::uint64_t kConfinedCrossCheck = 4;

}  // namespace

std::vector<Slope> NewtonPolygon::eigenvalue_valuations() const {
  std::vector<Slope> out;
  for (const auto& s : segments) out.insert(out.end(), s.length, -s.slope);
  std::sort(out.begin(), out.end());
  return out;
}

NewtonPolygon newton_polygon(std::span<const LaurentPoly> chi, Place place) {
  const auto hull = lower_hull(chi, place);
  NewtonPolygon poly{place, {}, leading_zeros(chi)};
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const std::int64_t len = hull[i].j - hull[i - 1].j;
    poly.segments.push_back({Slope(hull[i].v - hull[i - 1].v, len), static_cast<std::size_t>(len)});
  }
  return poly;
}

bool is_confined(const Rule& rule) {
  const auto chi = rule_char_poly(rule);
  const Poly h = z_coefficient_gcd(chi, rule.field());
  const bool confined = is_power_of_x(h);
  if (confined) {
    for (std::uint64_t n = 1; n <= kConfinedCrossCheck; ++n) {
      if (laurent_det(minus_identity(rule.matrix().pow(n))).is_zero()) {
        throw InconsistencyError("confined by the eigenvalue test but det(G^n - I) vanishes");
      }
    }
    return true;
  }
  // A nonzero root of h is a root of unity eigenvalue; its order m must give det(G^m - I) = 0.
  for (const auto& [f, mult] : factor(h)) {
    if (is_power_of_x(f)) continue;
    const std::uint64_t m = root_order(f);
    if (!laurent_det(minus_identity(rule.matrix().pow(m))).is_zero()) {
      throw InconsistencyError("root of unity eigenvalue found but det(G^m - I) does not vanish");
    }
    break;
  }
  return false;
}

std::int64_t log_fix_count(const Rule& rule, std::uint64_t n) {
  if (n == 0) throw DomainError("iterate count must be >= 1");
  return log_count_of(rule.matrix().pow(n), 0);
}

std::vector<std::int64_t> log_fix_counts(const Rule& rule, std::uint64_t n_max) {
  std::vector<std::int64_t> out;
  out.reserve(n_max);
  LaurentMatrix g = LaurentMatrix::identity(rule.field(), rule.bands());
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    g = g * rule.matrix();
    out.push_back(log_count_of(g, 0));
  }
  return out;
}

std::int64_t coincidence_log_count(const Rule& rule, std::uint64_t n, std::int64_t k) {
  if (n == 0) throw DomainError("iterate count must be >= 1");
  return log_count_of(rule.matrix().pow(n), k);
}

OneSidedReduction one_sided_reduction(const Rule& rule) {
  const std::int64_t m = rule.window() ? std::min<std::int64_t>(rule.window()->e_min, 0) : 0;
  return {Rule(rule.matrix().shifted(-m)), m};
}

std::int64_t compute_a(const Rule& rule) {
  const auto chi = rule_char_poly(rule);
  std::int64_t a = 0;
  for (const Place place : {Place::AtZero, Place::AtInfinity}) {
    for (const auto& s : newton_polygon(chi, place).segments) {
      if (s.slope > 0) a += s.slope.numerator() * static_cast<std::int64_t>(s.length) / s.slope.denominator();
    }
  }
  return a;
}

bool is_eventually_zero(const Rule& rule) {
  const auto chi = rule_char_poly(rule);
  const bool nilpotent = leading_zeros(chi) + 1 == chi.size();
  const bool vanishes = rule.matrix().pow(rule.bands()).is_zero();
  if (nilpotent != vanishes) throw InconsistencyError("characteristic polynomial and matrix powers disagree on nilpotence");
  if (is_confined(rule) && (compute_a(rule) == 0) != nilpotent) {
    throw InconsistencyError("a = 0 does not match nilpotence");
  }
  return nilpotent;
}

std::vector<ResidualOrder> residual_data(const Rule& rule, Place place) {
  const auto chi = rule_char_poly(rule);
  const auto hull = lower_hull(chi, place);
  std::vector<ResidualOrder> out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    if (hull[i].v != hull[i - 1].v) continue;
    const std::int64_t h = hull[i].v;
    const auto j0 = static_cast<std::size_t>(hull[i - 1].j), j1 = static_cast<std::size_t>(hull[i].j);
    std::vector<Residue> res(j1 - j0 + 1, 0);
    for (std::size_t j = j0; j <= j1; ++j) {
      if (!chi[j].is_zero() && place_valuation(chi[j], place) == h) res[j - j0] = place_residue(chi[j], place);
    }
    for (const auto& [f, mult] : factor(Poly(rule.field(), std::move(res)).monic())) {
      const ResidualOrder entry{*f.degree(), root_order(f)};
      out.insert(out.end(), static_cast<std::size_t>(mult), entry);
    }
  }
  return out;
}

std::uint64_t compute_varpi(const Rule& rule) {
  std::uint64_t varpi = 1;
  for (const Place place : {Place::AtZero, Place::AtInfinity}) {
    for (const auto& e : residual_data(rule, place)) varpi = lcm_u64(varpi, e.order);
  }
  if (varpi % rule.p() == 0) throw InconsistencyError("varpi is not coprime to p");
  return varpi;
}

std::map<std::uint64_t, std::int64_t> compute_t(const Rule& rule, std::int64_t a, std::uint64_t varpi) {
  std::map<std::uint64_t, std::int64_t> t;
  for (const auto d : divisors(varpi)) {
    const std::int64_t td = a * static_cast<std::int64_t>(d) - log_fix_count(rule, d);
    if (td < 0) throw InconsistencyError("negative t_" + std::to_string(d));
    t[d] = td;
  }
  return t;
}

std::uint64_t default_n_check(std::uint32_t p, std::uint64_t varpi) {
  return std::max<std::uint64_t>({20, 2 * varpi, 2 * static_cast<std::uint64_t>(p)});
}

std::int64_t Invariants::t_at(std::uint64_t n) const { return t.at(gcd_u64(n, varpi)); }

std::int64_t Invariants::predicted_log_count(std::uint64_t n) const {
  const auto pv = static_cast<std::int64_t>(checked_pow(p, static_cast<std::uint64_t>(p_adic_valuation(n, p))));
  return static_cast<std::int64_t>(n) * a - t_at(n) * pv;
}

Invariants invariants(const Rule& rule, std::optional<std::uint64_t> n_check) {
  if (!is_confined(rule)) throw NotConfinedError("rule is not confined");
  Invariants inv;
  inv.confined = true;
  inv.p = rule.p();
  inv.a = compute_a(rule);
  inv.varpi = compute_varpi(rule);
  inv.t = compute_t(rule, inv.a, inv.varpi);
  inv.n_checked = n_check.value_or(default_n_check(inv.p, inv.varpi));
  const auto logs = log_fix_counts(rule, inv.n_checked);
  for (std::uint64_t n = 1; n <= inv.n_checked; ++n) {
    const std::int64_t predicted = inv.predicted_log_count(n);
    if (predicted < 0 || predicted != logs[n - 1]) {
      throw InconsistencyError("fixed-point formula fails at n = " + std::to_string(n) + ": determinant gives " +
                               std::to_string(logs[n - 1]) + ", formula gives " + std::to_string(predicted));
    }
  }
  return inv;
}

std::vector<BigInt> fix_counts(const Rule& rule, std::uint64_t n_max) {
  std::vector<BigInt> out;
  for (const auto e : log_fix_counts(rule, n_max)) out.push_back(big_pow(rule.p(), static_cast<std::uint64_t>(e)));
  return out;
}

ZetaClassification zeta(const Rule& rule, std::size_t order) { return zeta(rule, invariants(rule), order); }

ZetaClassification zeta(const Rule& rule, const Invariants& inv, std::size_t order) {
  const auto fix = fix_counts(rule, order);
  std::vector<BigInt> series{1};
  for (std::size_t n = 1; n <= order; ++n) {
    BigInt acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += fix[k - 1] * series[n - k];
    if (acc % n != 0) throw InconsistencyError("zeta coefficient " + std::to_string(n) + " is not integral");
    series.push_back(acc / n);
  }
  const bool rational = std::all_of(inv.t.begin(), inv.t.end(), [](const auto& kv) { return kv.second == 0; });
  if (rational) {
    for (std::size_t n = 0; n <= order; ++n) {
      if (series[n] != big_pow(rule.p(), static_cast<std::uint64_t>(inv.a) * n)) {
        throw InconsistencyError("t vanishes but the zeta series differs from 1/(1 - p^a z)");
      }
    }
  }
  return {rational ? ZetaKind::Rational : ZetaKind::NaturalBoundaryCandidate, inv.a, std::move(series)};
}

std::vector<BigInt> orbit_counts_from_fix(std::span<const BigInt> fix) {
  std::vector<BigInt> out;
  for (std::uint64_t l = 1; l <= fix.size(); ++l) {
    BigInt acc = 0;
    for (const auto d : divisors(l)) {
      const int mu = mobius(l / d);
      if (mu != 0) acc += mu * fix[d - 1];
    }
    if (acc % l != 0 || acc < 0) throw InconsistencyError("orbit count P_" + std::to_string(l) + " is not a natural number");
    out.push_back(acc / l);
  }
  return out;
}

std::vector<BigInt> orbit_counts(const Rule& rule, std::uint64_t l_max) {
  const auto fix = fix_counts(rule, l_max);
  return orbit_counts_from_fix(fix);
}

AsymptoticReport asymptotic_report(const Rule& rule, std::uint64_t l_max, double bound) {
  const auto inv = invariants(rule);
  const auto orbits = orbit_counts(rule, l_max);
  return asymptotic_report(inv, orbits, bound);
}

AsymptoticReport asymptotic_report(const Invariants& inv, std::span<const BigInt> orbits, double bound) {
  if (inv.a < 1) throw DomainError("orbit asymptotics need a >= 1");
  AsymptoticReport report;
  report.bound = bound;
  for (std::uint64_t l = 1; l <= orbits.size(); ++l) {
    const std::int64_t e = inv.predicted_log_count(l);
    AsymptoticRow row;
    row.length = l;
    row.orbits = orbits[l - 1];
    row.main_term = BigRational(big_pow(inv.p, static_cast<std::uint64_t>(e)), BigInt(l));
    const BigRational diff = BigRational(row.orbits) - row.main_term;
    row.ratio_squared = diff * diff / BigRational(big_pow(inv.p, static_cast<std::uint64_t>(inv.a) * l));
    row.residual_ratio = std::sqrt(to_double(row.ratio_squared));
    if (l >= 2) report.max_ratio = std::max(report.max_ratio, row.residual_ratio);
    report.rows.push_back(std::move(row));
  }
  report.bounded = report.max_ratio <= bound;
  return report;
}

std::vector<OrbitCountingRow> orbit_counting_function(const Rule& rule, std::uint64_t x_max) {
  const auto inv = invariants(rule);
  const auto orbits = orbit_counts(rule, x_max);
  return orbit_counting_function(inv, orbits);
}

std::vector<OrbitCountingRow> orbit_counting_function(const Invariants& inv, std::span<const BigInt> orbits) {
  std::vector<OrbitCountingRow> out;
  BigInt pi = 0;
  for (std::uint64_t x = 1; x <= orbits.size(); ++x) {
    pi += orbits[x - 1];
    const BigRational normalized(pi * x, big_pow(inv.p, static_cast<std::uint64_t>(inv.a) * x));
    out.push_back({x, pi, normalized});
  }
  return out;
}

}  // namespace mlca
