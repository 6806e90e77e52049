#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "mlca/automaton.hpp"
#include "mlca/bigint.hpp"

namespace mlca {

// Fixed-point counts, structural invariants, zeta classification and orbit
// counts for confined automata.
//
// Every count is exact. Counts are carried as base-p exponents
// (log_p #Fix) unless a big integer is unavoidable.

using Slope = boost::rational<std::int64_t>;

// The two places of F_p(Z) that matter: v_Z, and v_{1/Z} = -deg_Z.
enum class Place { AtZero, AtInfinity };

const char* to_string(Place place) noexcept;

struct NewtonSegment {
  Slope slope;
  std::size_t length;
  friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

// Lower convex hull of {(j, v(c_j))} for the characteristic polynomial.
// A segment of slope s and length l stands for l eigenvalues of valuation -s.
struct NewtonPolygon {
  Place place;
  std::vector<NewtonSegment> segments;  // slopes strictly increasing
  std::size_t zero_eigenvalue_count = 0;

  // Valuations of the nonzero eigenvalues, with multiplicity, ascending.
  std::vector<Slope> eigenvalue_valuations() const;
};

NewtonPolygon newton_polygon(std::span<const LaurentPoly> chi, Place place);

// Residue-field data of one unit eigenvalue class: an irreducible factor of
// the residual polynomial of degree `residue_degree` whose roots have
// multiplicative order `order`.
struct ResidualOrder {
  std::size_t residue_degree;
  std::uint64_t order;
  friend bool operator==(const ResidualOrder&, const ResidualOrder&) = default;
};

struct Invariants {
  bool confined = false;
  std::int64_t a = 0;
  std::uint64_t varpi = 1;
  std::map<std::uint64_t, std::int64_t> t;  // keyed by the divisors of varpi
  std::uint64_t n_checked = 0;              // the fixed-point formula was verified for n = 1..n_checked
  std::uint32_t p = 2;

  // t_{gcd(n, varpi)}.
  std::int64_t t_at(std::uint64_t n) const;
  // n a - t_n p^{v_p(n)}.
  std::int64_t predicted_log_count(std::uint64_t n) const;
};

enum class ZetaKind { Rational, NaturalBoundaryCandidate };

const char* to_string(ZetaKind kind) noexcept;

struct ZetaClassification {
  ZetaKind kind;
  std::int64_t a;
  std::vector<BigInt> truncated_series;  // coefficients of z^0 .. z^order
};

struct AsymptoticRow {
  std::uint64_t length;
  BigInt orbits;             // P_l
  BigRational main_term;     // p^{l a - t_l p^{v_p(l)}} / l
  BigRational ratio_squared; // (P_l - main)^2 / p^{l a}, exact
  double residual_ratio;     // |P_l - main| / p^{l a / 2}
};

struct AsymptoticReport {
  std::vector<AsymptoticRow> rows;
  double max_ratio = 0.0;  // over l >= 2
  double bound = 2.0;
  bool bounded = true;     // max_ratio <= bound
};

struct OrbitCountingRow {
  std::uint64_t x;
  BigInt pi;               // number of periodic orbits of length <= x
  BigRational normalized;  // x pi(x) / p^{a x}
};

// No eigenvalue of G(Z) is a root of unity. Decided through the gcd of the
// Z-coefficients of det(lambda I - G); cross-checked against determinants of
// G^n - I (throws InconsistencyError if the two routes disagree).
bool is_confined(const Rule& rule);

// log_p #Fix(g^n) = deg_Z - v_Z of det(G^n - I). Throws NotConfinedError if
// the determinant vanishes.
std::int64_t log_fix_count(const Rule& rule, std::uint64_t n);
// log_fix_count for n = 1..n_max (index 0 holds n = 1).
std::vector<std::int64_t> log_fix_counts(const Rule& rule, std::uint64_t n_max);

// log_p #Coin(g^n, s^k) from det(G^n - Z^k I). Throws NotConfinedError if the
// determinant vanishes.
std::int64_t coincidence_log_count(const Rule& rule, std::uint64_t n, std::int64_t k);

// The reduction g~ = g s^{-M} with M = min(e_min, 0), making the rule one-sided.
struct OneSidedReduction {
  Rule shifted;
  std::int64_t m;
};
OneSidedReduction one_sided_reduction(const Rule& rule);

std::int64_t compute_a(const Rule& rule);
bool is_eventually_zero(const Rule& rule);
std::vector<ResidualOrder> residual_data(const Rule& rule, Place place);
std::uint64_t compute_varpi(const Rule& rule);
// t_d = a d - log_fix_count(d) for every divisor d of varpi.
std::map<std::uint64_t, std::int64_t> compute_t(const Rule& rule, std::int64_t a, std::uint64_t varpi);

// max(20, 2 varpi, 2p).
std::uint64_t default_n_check(std::uint32_t p, std::uint64_t varpi);

// Assembles (a, varpi, t) and verifies the fixed-point formula for every
// n <= n_check. Throws NotConfinedError or InconsistencyError.
Invariants invariants(const Rule& rule, std::optional<std::uint64_t> n_check = std::nullopt);

// #Fix(g^n) for n = 1..n_max, as integers.
std::vector<BigInt> fix_counts(const Rule& rule, std::uint64_t n_max);

ZetaClassification zeta(const Rule& rule, std::size_t order);
// Same, reusing already computed invariants.
ZetaClassification zeta(const Rule& rule, const Invariants& inv, std::size_t order);

// P_1..P_{l_max} by Moebius inversion.
std::vector<BigInt> orbit_counts(const Rule& rule, std::uint64_t l_max);
std::vector<BigInt> orbit_counts_from_fix(std::span<const BigInt> fix);

AsymptoticReport asymptotic_report(const Rule& rule, std::uint64_t l_max, double bound = 2.0);
AsymptoticReport asymptotic_report(const Invariants& inv, std::span<const BigInt> orbits, double bound = 2.0);

std::vector<OrbitCountingRow> orbit_counting_function(const Rule& rule, std::uint64_t x_max);
std::vector<OrbitCountingRow> orbit_counting_function(const Invariants& inv, std::span<const BigInt> orbits);

}  // namespace mlca
