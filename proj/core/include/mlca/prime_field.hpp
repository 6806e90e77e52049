#pragma once

#include <cstdint>

namespace mlca {

// A residue modulo the characteristic, always kept in [0, p).
using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

// The prime field F_p. Cheap to copy; p is validated once at construction.
class PrimeField {
 public:
  // Largest supported characteristic; keeps every product inside 64 bits.
  static constexpr std::uint32_t kMaxPrime = (1u << 31) - 1;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    const std::int64_t m = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(m < 0 ? m + p_ : m);
  }
  Residue add(Residue a, Residue b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  // Throws DomainError on zero.
  Residue inv(Residue a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace mlca
