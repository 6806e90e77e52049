#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlca/prime_field.hpp"

namespace mlca {

// Dense univariate polynomial over F_p. Coefficient i belongs to X^i.
//
// Always normalized: the top stored coefficient is nonzero and the zero
// polynomial stores nothing, so its degree is std::nullopt rather than an
// integer.
class Poly {
 public:
  explicit Poly(PrimeField field) : field_(field) {}
  Poly(PrimeField field, std::vector<Residue> coeffs);
  // Reduces signed integers modulo p.
  static Poly from_ints(PrimeField field, std::span<const std::int64_t> coeffs);
  static Poly constant(PrimeField field, Residue c);
  static Poly monomial(PrimeField field, Residue c, std::size_t k);
  // The polynomial X.
  static Poly x(PrimeField field) { return monomial(field, 1, 1); }

  const PrimeField& field() const noexcept { return field_; }
  std::span<const Residue> coeffs() const noexcept { return c_; }
  // Number of stored coefficients (0 for the zero polynomial).
  std::size_t size() const noexcept { return c_.size(); }

  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  std::optional<std::size_t> degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  // Coefficient of X^i; zero past the degree.
  Residue operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  Residue lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  // Multiplicity of X as a factor; 0 for the zero polynomial.
  std::size_t low_order() const noexcept;

  Residue eval(Residue x) const noexcept;
  Poly derivative() const;
  Poly monic() const;
  Poly scaled(Residue s) const;
  // Multiplies by X^k.
  Poly shifted_up(std::size_t k) const;
  // Drops the lowest k coefficients (exact division by X^k when they vanish).
  Poly shifted_down(std::size_t k) const;
  // Coefficient-reversed polynomial X^deg f(1/X) for a given length.
  Poly reversed(std::size_t length) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly&, const Poly&) = default;

  // Human-readable rendering in the variable `var`, e.g. "1 + X + 2*X^3".
  std::string to_string(std::string_view var = "X") const;

 private:
  void normalize();

  PrimeField field_;
  std::vector<Residue> c_;
};

// Quotient and remainder; throws DomainError when b is zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
// Exact division; throws InconsistencyError if the remainder is nonzero.
Poly exact_div(const Poly& a, const Poly& b);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& mod);
Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& mod);
// x^(p^k) reduced modulo `mod`, starting from a given residue class.
Poly frobenius_mod(const Poly& a, std::size_t k, const Poly& mod);

// Ben-Or irreducibility test.
bool is_irreducible(const Poly& f);

struct PolyFactor {
  Poly factor;  // monic irreducible
  int multiplicity;
};

// Complete factorization into monic irreducibles (squarefree, distinct-degree,
// then Cantor-Zassenhaus equal-degree splitting). Deterministic in `seed`.
// Factors are sorted by degree, then lexicographically by coefficients.
// Throws DomainError on the zero polynomial.
std::vector<PolyFactor> factor(const Poly& f, std::uint64_t seed = 0);

}  // namespace mlca
