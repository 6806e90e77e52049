#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mlca/fp_matrix.hpp"
#include "mlca/laurent_matrix.hpp"

namespace mlca {

// Exponent range [e_min, e_max] of the local rule.
struct Window {
  std::int64_t e_min;
  std::int64_t e_max;
  friend bool operator==(const Window&, const Window&) = default;
};

// A multiband linear cellular automaton on (F_p^r)^Z, stored in convolutional
// encoder form G(Z) = sum_j m_j Z^j. The automaton sends (y_i) to
// (sum_j m_j y_{i+j}).
class Rule {
 public:
  explicit Rule(LaurentMatrix matrix);
  static Rule identity(PrimeField field, std::size_t r) { return Rule(LaurentMatrix::identity(field, r)); }
  static Rule zero(PrimeField field, std::size_t r) { return Rule(LaurentMatrix(field, r)); }
  // The spatial shift s: Z * I_r.
  static Rule shift(PrimeField field, std::size_t r) { return Rule(LaurentMatrix::shift(field, r, 1)); }

  const PrimeField& field() const noexcept { return matrix_.field(); }
  std::uint32_t p() const noexcept { return matrix_.field().p(); }
  std::size_t bands() const noexcept { return matrix_.dim(); }
  const LaurentMatrix& matrix() const noexcept { return matrix_; }
  // nullopt for the zero rule (empty support).
  const std::optional<Window>& window() const noexcept { return window_; }
  // Local rule matrix m_j (row-major r x r).
  std::vector<Residue> local_matrix(std::int64_t j) const { return matrix_.coefficient(j); }

  friend bool operator==(const Rule& a, const Rule& b) { return a.matrix_ == b.matrix_; }

 private:
  LaurentMatrix matrix_;
  std::optional<Window> window_;
};

// A spatially periodic configuration, given by one period of N cells in F_p^r.
class PeriodicConfig {
 public:
  // Cells row-major: cell i occupies values[i*r, (i+1)*r).
  PeriodicConfig(PrimeField field, std::size_t r, std::size_t period, std::vector<Residue> values);
  static PeriodicConfig zero(PrimeField field, std::size_t r, std::size_t period);
  // From a list of cells, each a vector of r residues.
  static PeriodicConfig from_cells(PrimeField field, const std::vector<std::vector<std::int64_t>>& cells);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t bands() const noexcept { return r_; }
  std::size_t period() const noexcept { return n_; }
  std::span<const Residue> values() const noexcept { return v_; }
  // Cell i, extended periodically to every integer index.
  std::span<const Residue> cell(std::int64_t i) const;
  bool is_zero() const noexcept;

  // Same sequence written with period k * N.
  PeriodicConfig lifted(std::size_t k) const;
  // Smallest period of the underlying bi-infinite sequence.
  std::size_t minimal_period() const;

  PeriodicConfig scaled(Residue s) const;
  friend PeriodicConfig operator+(const PeriodicConfig& a, const PeriodicConfig& b);
  friend PeriodicConfig operator-(const PeriodicConfig& a, const PeriodicConfig& b);
  // Equality of bi-infinite sequences (compares after lifting to the lcm period).
  friend bool operator==(const PeriodicConfig& a, const PeriodicConfig& b);

 private:
  PrimeField field_;
  std::size_t r_;
  std::size_t n_;
  std::vector<Residue> v_;
};

// One application of the automaton; the period is preserved.
PeriodicConfig apply(const Rule& rule, const PeriodicConfig& cfg);

// The n-fold iterate (matrix power of G).
Rule iterate(const Rule& rule, std::uint64_t n);

// Composition: (compose(a, b))(y) = a(b(y)).
Rule compose(const Rule& a, const Rule& b);

// True iff all entries of G are polynomials in Z (the zero rule included).
bool is_one_sided(const Rule& rule);

// First-order simulation of the order-s recursion Y^(t) = sum_j G_j Y^(t-j):
// the rs x rs block matrix with first block row (G_1, ..., G_s) and I_r on
// the block subdiagonal.
Rule companion(const std::vector<LaurentMatrix>& blocks);

// Cyclic shift by k: the result at cell i is the input at cell i + k.
PeriodicConfig shift_by(const PeriodicConfig& cfg, std::int64_t k);

// Matrix of the automaton acting on period-N configurations (dimension rN,
// block circulant; coordinate i*r + b is band b of cell i).
FpMatrix transition_matrix(const Rule& rule, std::size_t period);

// Dimension of {cfg of period dividing N : g^n(cfg) = cfg}.
std::size_t fixed_configs_dimension(const Rule& rule, std::uint64_t n, std::size_t period);

// Seeded random rule: every entry is a Laurent polynomial with exponents in
// [min_exp, max_exp] and span (deg - val) at most max_span.
struct RandomRuleShape {
  std::uint32_t p = 2;
  std::size_t bands = 1;
  std::int64_t min_exp = 0;
  std::int64_t max_exp = 2;
  std::int64_t max_span = 2;
};
Rule random_rule(const RandomRuleShape& shape, std::mt19937_64& rng);

// Random configuration with the given period.
PeriodicConfig random_config(PrimeField field, std::size_t r, std::size_t period, std::mt19937_64& rng);

}  // namespace mlca
