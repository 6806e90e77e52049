#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mlca {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
// Throws DomainError on overflow.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

// Exponent of the prime p in n (n >= 1).
int p_adic_valuation(std::uint64_t n, std::uint64_t p);

// Prime factorization as (prime, exponent), ascending; Pollard rho with a
// deterministic Miller-Rabin test, exact for all 64-bit inputs.
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);

// Divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Moebius function.
int mobius(std::uint64_t n);

// base^e, throwing DomainError if the result does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e);

}  // namespace mlca
