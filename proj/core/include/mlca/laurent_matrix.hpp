#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlca/laurent.hpp"

namespace mlca {

// Square r x r matrix over F_p[Z, Z^-1]. Row-major, immutable in practice.
class LaurentMatrix {
 public:
  LaurentMatrix(PrimeField field, std::size_t r);  // zero matrix
  // Entries row-major; throws DomainError on size or field mismatch.
  LaurentMatrix(PrimeField field, std::size_t r, std::vector<LaurentPoly> entries);
  static LaurentMatrix identity(PrimeField field, std::size_t r);
  // Z^k * I_r.
  static LaurentMatrix shift(PrimeField field, std::size_t r, std::int64_t k = 1);
  // Convenience for small hand-written matrices: each entry is a list of
  // (exponent, coefficient) terms.
  static LaurentMatrix from_terms(
      PrimeField field, const std::vector<std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>>& rows);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return r_; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return e_[i * r_ + j]; }
  const std::vector<LaurentPoly>& entries() const noexcept { return e_; }

  bool is_zero() const noexcept;
  // Smallest / largest Z-exponent over all entries; nullopt for the zero matrix.
  std::optional<std::int64_t> min_exponent() const noexcept;
  std::optional<std::int64_t> max_exponent() const noexcept;
  // Coefficient matrix of Z^e, row-major r*r residues (the local rule matrix m_e).
  std::vector<Residue> coefficient(std::int64_t e) const;

  LaurentMatrix shifted(std::int64_t k) const;  // times Z^k
  LaurentMatrix scaled(Residue s) const;
  LaurentMatrix inverted_variable() const;      // Z -> Z^-1 entrywise
  LaurentMatrix pow(std::uint64_t n) const;     // repeated squaring; pow(0) = I

  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

  std::string to_string() const;

 private:
  PrimeField field_;
  std::size_t r_;
  std::vector<LaurentPoly> e_;
};

// Exact determinant: fraction-free (Bareiss) elimination over F_p[Z] after
// factoring Z^{e_min} out of every entry.
LaurentPoly laurent_det(const LaurentMatrix& m);

// Coefficients c_0..c_r of det(lambda*I - m) = sum_j c_j lambda^j, computed
// with the division-free Berkowitz recurrence (valid in every characteristic).
std::vector<LaurentPoly> char_poly(const LaurentMatrix& m);

// Exact power; identical to m.pow(n).
LaurentMatrix matrix_power(const LaurentMatrix& m, std::uint64_t n);

// Evaluates sum_j coeffs[j] * m^j.
LaurentMatrix evaluate_poly_at(const std::vector<LaurentPoly>& coeffs, const LaurentMatrix& m);

// Factors out Z^{e_min}: returns (e_min, P) with m = Z^{e_min} P and P having
// polynomial entries. e_min is 0 for the zero matrix.
std::pair<std::int64_t, std::vector<Poly>> clear_offsets(const LaurentMatrix& m);

}  // namespace mlca
