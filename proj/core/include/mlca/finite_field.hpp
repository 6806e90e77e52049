#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mlca/fp_matrix.hpp"
#include "mlca/poly.hpp"

namespace mlca {

class ExtElem;

// F_{p^N} = F_p[x]/(modulus), elements in the power basis 1, x, ..., x^{N-1}.
//
// Subfields are never built separately: F_{p^M} for M | N is the set of
// elements fixed by the M-th power of Frobenius.
class ExtField : public std::enable_shared_from_this<ExtField> {
 public:
  // Verifies that the modulus is monic and irreducible.
  static std::shared_ptr<const ExtField> create(const Poly& modulus);
  // Field with a seed-deterministic random irreducible modulus (memoized).
  static std::shared_ptr<const ExtField> random(std::uint32_t p, std::size_t degree, std::uint64_t seed);

  const PrimeField& prime_field() const noexcept { return modulus_.field(); }
  std::uint32_t characteristic() const noexcept { return modulus_.field().p(); }
  std::size_t degree() const noexcept { return n_; }
  const Poly& modulus() const noexcept { return modulus_; }
  // Matrix of x -> x^p on the power basis (column j = coordinates of x^{jp}).
  const FpMatrix& frobenius_matrix() const noexcept { return frob_; }

  ExtElem zero() const;
  ExtElem one() const;
  ExtElem generator() const;  // the class of x
  ExtElem from_residue(Residue c) const;
  // Coordinates in the power basis; the vector is reduced mod p and must have length N.
  ExtElem element(std::vector<Residue> coords) const;
  // Element whose power-basis coordinates are the base-p digits of `index`.
  ExtElem from_index(std::uint64_t index) const;

 private:
  explicit ExtField(Poly modulus);

  Poly modulus_;
  std::size_t n_;
  FpMatrix frob_;

  friend class ExtElem;
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

// Element of an ExtField; holds a shared reference to its field.
class ExtElem {
 public:
  ExtElem(ExtFieldPtr field, std::vector<Residue> coords);

  const ExtFieldPtr& field() const noexcept { return field_; }
  std::span<const Residue> coords() const noexcept { return c_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  Poly as_poly() const;

  ExtElem operator-() const;
  friend ExtElem operator+(const ExtElem& a, const ExtElem& b);
  friend ExtElem operator-(const ExtElem& a, const ExtElem& b);
  friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
  ExtElem& operator+=(const ExtElem& b) { return *this = *this + b; }
  ExtElem scaled(Residue s) const;
  ExtElem pow(std::uint64_t e) const;
  // Throws DomainError on zero.
  ExtElem inverse() const;
  friend bool operator==(const ExtElem& a, const ExtElem& b);

 private:
  ExtFieldPtr field_;
  std::vector<Residue> c_;
};

// Monic irreducible polynomial of the given degree; the same seed always
// yields the same polynomial. Throws SearchExhaustedError if the bounded
// search fails.
Poly random_irreducible(std::uint32_t p, std::size_t degree, std::uint64_t seed);

// x^{p^{k mod N}}; k may be negative.
ExtElem frobenius_power(const ExtElem& x, std::int64_t k);

// Relative trace down to F_{p^M}: sum of x^{p^{M i}}, i < N/M.
// Throws DomainError unless M divides N.
ExtElem rel_trace(const ExtElem& x, std::size_t sub_degree);

// Absolute trace as a prime-field residue.
Residue abs_trace(const ExtElem& x);

// True iff x lies in the subfield F_{p^M}.
bool in_subfield(const ExtElem& x, std::size_t sub_degree);

// True iff the conjugates x, x^p, ..., x^{p^{N-1}} form an F_p-basis.
bool is_normal_generator(const ExtElem& alpha);

// True iff alpha (an element of F_{p^M}) generates a normal basis of
// F_{p^M} over F_p, tested as linear independence of its first M conjugates
// inside the ambient field.
bool is_normal_in_subfield(const ExtElem& alpha, std::size_t sub_degree);

// Seeded random search for a normal basis generator.
ExtElem find_normal_generator(const ExtFieldPtr& field, std::uint64_t seed);

// Gram matrix of (x^i, x^j) -> tr(x^{i+j}) on the power basis.
FpMatrix trace_pairing_matrix(const ExtField& field);

// Matrix of x -> beta * x on the power basis.
FpMatrix multiplication_matrix(const ExtElem& beta);

// Matrix of x -> x^p on the power basis.
FpMatrix frobenius_matrix(const ExtField& field);

// F_p-basis (as elements) of the subfield F_{p^M}.
std::vector<ExtElem> subfield_basis(const ExtFieldPtr& field, std::size_t sub_degree);

// Least m >= 1 with beta^m = 1. Throws DomainError on zero.
std::uint64_t multiplicative_order(const ExtElem& beta);

// Smallest k with beta in F_{p^k}.
std::size_t degree_over_prime_field(const ExtElem& beta);

}  // namespace mlca
