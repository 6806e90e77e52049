#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlca/poly.hpp"

namespace mlca {

// Laurent polynomial Z^offset * unit_part over F_p.
//
// Canonical form: either zero (empty unit part, offset 0) or a unit part with
// nonzero constant term. With that normalization the Z-adic valuation is the
// offset and the degree is offset + deg(unit part), both O(1) reads.
class LaurentPoly {
 public:
  explicit LaurentPoly(PrimeField field) : unit_(field) {}
  LaurentPoly(Poly poly, std::int64_t offset = 0);
  static LaurentPoly constant(PrimeField field, Residue c) { return LaurentPoly(Poly::constant(field, c)); }
  static LaurentPoly monomial(PrimeField field, Residue c, std::int64_t e);
  // Sum of c * Z^e over (e, c) pairs; repeated exponents accumulate.
  static LaurentPoly from_terms(PrimeField field, const std::vector<std::pair<std::int64_t, std::int64_t>>& terms);

  const PrimeField& field() const noexcept { return unit_.field(); }
  const Poly& unit_part() const noexcept { return unit_; }
  std::int64_t offset() const noexcept { return offset_; }
  bool is_zero() const noexcept { return unit_.is_zero(); }
  bool is_one() const noexcept { return offset_ == 0 && unit_.is_one(); }

  // Both throw DomainError on zero.
  std::int64_t val() const;
  std::int64_t deg() const;
  // Coefficient of Z^e.
  Residue coeff(std::int64_t e) const noexcept;
  // (exponent, coefficient) pairs with nonzero coefficient, ascending.
  std::vector<std::pair<std::int64_t, Residue>> terms() const;

  LaurentPoly shifted(std::int64_t k) const;  // times Z^k
  LaurentPoly scaled(Residue s) const;
  LaurentPoly pow(std::uint64_t n) const;
  // Substitution Z -> Z^{-1}.
  LaurentPoly inverted_variable() const;

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator+=(const LaurentPoly& b) { return *this = *this + b; }
  LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
  LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Renders in the rule-entry grammar: "Z^-1 + 2*Z^3", "0" for zero.
  std::string to_string() const;

 private:
  void canonicalize();

  Poly unit_;
  std::int64_t offset_ = 0;
};

struct DegVal {
  std::int64_t deg;
  std::int64_t val;
  friend bool operator==(const DegVal&, const DegVal&) = default;
};

// (deg_Z x, v_Z x); throws DomainError on zero.
DegVal deg_val(const LaurentPoly& x);

}  // namespace mlca
