#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mlca/automaton.hpp"
#include "mlca/fp_matrix.hpp"

namespace mlca {

// Brute-force counts of solutions to g^n(y) = s^k(y), computed on both sides
// of the correspondence by exact elimination. The counts themselves never use
// determinants of polynomial matrices, so they independently check the
// dynamics module; the determinant only suggests which period to try.

enum class OracleSide { Field, Sequence };

// Matrix of sigma^n - F^k on F_{p^N}^r (field side, power basis of a seeded
// random F_{p^N}; block (a, b) acts on coordinate b and lands in a), or of
// g^n - s^k on period-N configurations (sequence side, block circulant).
struct LinearOperatorFp {
  OracleSide side;
  std::uint64_t n;
  std::int64_t k;
  std::size_t period;
  FpMatrix matrix;

  std::size_t dimension() const noexcept { return matrix.rows(); }
};

LinearOperatorFp field_side_operator(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period,
                                     std::uint64_t field_seed = 0);
LinearOperatorFp sequence_side_operator(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period);

// Nullities of the operators above; the solution counts are p^nullity.
std::size_t field_side_count(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period,
                             std::uint64_t field_seed = 0);
std::size_t sequence_side_count(const Rule& rule, std::uint64_t n, std::int64_t k, std::size_t period);

struct LadderOptions {
  std::size_t max_dimension = 600;  // r N stays at or below this
  std::size_t j_max = 30;           // N runs over lcm(1..j), j <= j_max
  std::uint64_t field_seed = 0;
  bool stop_when_attained = true;
  bool use_certified_period = true;  // see certified_period
};

// Distinct values of lcm(1..j) allowed by the options for r bands.
std::vector<std::size_t> ladder_periods(std::size_t bands, const LadderOptions& options = {});

// A period shared by every solution of g^n(y) = s^k(y): with H = G^n - Z^k I,
// adj(H) H = det(H) I, so each band of a solution satisfies the recurrence
// det(H)(s) y = 0 and repeats with the order of Z modulo det(H). nullopt when
// det(H) = 0 or the order does not fit in 63 bits.
std::optional<std::uint64_t> certified_period(const Rule& rule, std::uint64_t n, std::int64_t k);

// The ladder ending at a certified period P: gcd(lcm(1..j), P) for growing j,
// then P itself.
std::vector<std::size_t> certified_ladder(std::uint64_t period, const LadderOptions& options = {});

struct LadderStep {
  std::size_t period;
  std::size_t field_log;
  std::size_t sequence_log;
};

struct StabilizedCount {
  std::size_t exponent = 0;                // largest count seen on the ladder
  std::optional<std::int64_t> closed_form; // coincidence_log_count, when finite
  bool attained = false;                   // exponent == closed_form
  std::size_t attained_at = 0;             // first period reaching it
  bool sides_agree = true;                 // field and sequence side equal at every step
  bool within_bound = true;                // no step exceeds the closed form
  bool monotone = true;                    // nondecreasing along the ladder
  std::optional<std::uint64_t> certified_period;  // used as the ladder top when r P fits the cap
  std::vector<LadderStep> steps;
};

// Walks the certified ladder when r P fits the cap, otherwise the lcm ladder.
StabilizedCount stabilized_count(const Rule& rule, std::uint64_t n, std::int64_t k, const LadderOptions& options = {});

// Every configuration of period dividing N fixed by g^n, by enumeration.
// Throws DomainError when p^{rN} exceeds the bound.
std::vector<PeriodicConfig> exhaustive_config_search(const Rule& rule, std::uint64_t n, std::size_t period,
                                                     std::uint64_t bound = 1u << 16);

}  // namespace mlca
