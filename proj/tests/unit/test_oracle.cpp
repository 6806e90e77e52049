#include <random>

#include "doctest.h"
#include "mlca/dynamics.hpp"
#include "mlca/error.hpp"
#include "mlca/oracle.hpp"
#include "support.hpp"

using namespace mlca;
using mlca::test::rule;

namespace {

// log_p #{y of period dividing N : g^n y = s^k y}, by enumeration.
std::size_t brute_coincidences(const Rule& g, std::uint64_t n, std::int64_t k, std::size_t period) {
  const Rule gn = iterate(g, n);
  std::uint64_t count = 0;
  mlca::test::for_each_config(g.field(), g.bands(), period, [&](const PeriodicConfig& y) {
    if (apply(gn, y) == shift_by(y, k)) ++count;
  });
  return static_cast<std::size_t>(mlca::test::log_p_exact(count, g.p()));
}

}  // namespace

TEST_CASE("both oracle sides agree with enumeration") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t p = trial % 2 ? 2 : 3;
    const std::size_t r = 1 + static_cast<std::size_t>(trial % 2);
    const Rule g = random_rule({p, r, -2, 2, 2}, rng);
    for (std::size_t period = 1; period <= 6; ++period) {
      if (mlca::test::ipow(p, r * period) > 4096) continue;
      for (std::uint64_t n = 1; n <= 3; ++n) {
        for (const std::int64_t k : {0, 1, -2}) {
          const std::size_t expected = brute_coincidences(g, n, k, period);
          CHECK(sequence_side_count(g, n, k, period) == expected);
          CHECK(field_side_count(g, n, k, period) == expected);
          CHECK(field_side_count(g, n, k, period, 9) == expected);
        }
      }
    }
  }
}

TEST_CASE("operators have the expected shape") {
  const Rule g = rule(3, {{"Z", "1"}, {"1", "0"}});
  const auto f = field_side_operator(g, 2, 0, 5);
  const auto s = sequence_side_operator(g, 2, 0, 5);
  CHECK(f.side == OracleSide::Field);
  CHECK(s.side == OracleSide::Sequence);
  CHECK(f.dimension() == 10);
  CHECK(s.dimension() == 10);
  CHECK(f.matrix.nullity() == s.matrix.nullity());
}

TEST_CASE("ladder periods") {
  const auto l1 = ladder_periods(1);
  CHECK(l1.front() == 1);
  for (std::size_t i = 1; i < l1.size(); ++i) {
    CHECK(l1[i] % l1[i - 1] == 0);
    CHECK(l1[i] > l1[i - 1]);
  }
  CHECK(l1.back() <= 600);
  CHECK(l1 == std::vector<std::size_t>{1, 2, 6, 12, 60, 420});
  CHECK(ladder_periods(2) == std::vector<std::size_t>{1, 2, 6, 12, 60});
  LadderOptions small;
  small.max_dimension = 120;
  CHECK(ladder_periods(2, small) == std::vector<std::size_t>{1, 2, 6, 12, 60});
  small.max_dimension = 100;
  CHECK(ladder_periods(2, small) == std::vector<std::size_t>{1, 2, 6, 12});
}

TEST_CASE("stabilized counts on the examples") {
  const auto a = stabilized_count(rule(2, {{"1 + Z"}}), 3, 0);
  CHECK(a.attained);
  CHECK(a.exponent == 2);
  CHECK(a.closed_form == 2);
  CHECK(a.sides_agree);
  CHECK(a.monotone);

  const Rule h = rule(2, {{"Z", "1"}, {"1", "0"}});
  std::size_t best = 0;
  for (std::size_t period = 1; period <= 12; ++period) best = std::max(best, sequence_side_count(h, 3, 0, period));
  CHECK(best == 2);
  const auto b = stabilized_count(h, 3, 0);
  CHECK(b.attained);
  CHECK(b.exponent == 2);

  for (const std::uint32_t p : {2u, 3u}) {
    for (std::uint64_t n = 1; n <= 5; ++n) {
      const auto s = stabilized_count(rule(p, {{"Z"}}), n, 0);
      CHECK(s.attained);
      CHECK(s.exponent == n);
    }
  }
  // Full ladder with no early exit never exceeds the closed form.
  LadderOptions full;
  full.stop_when_attained = false;
  full.max_dimension = 120;
  const auto c = stabilized_count(rule(3, {{"1 + Z^-1", "Z"}, {"2", "Z^2"}}), 4, 1, full);
  CHECK(c.within_bound);
  CHECK(c.sides_agree);
  CHECK(c.monotone);
  CHECK(c.steps.size() == 5);
}

TEST_CASE("non-confined rules have no closed form") {
  const auto s = stabilized_count(rule(2, {{"1"}}), 1, 0, LadderOptions{12, 30, 0, true});
  CHECK_FALSE(s.closed_form.has_value());
  CHECK_FALSE(s.attained);
  CHECK(s.exponent == 12);
}

TEST_CASE("exhaustive configuration search") {
  const Rule g = rule(2, {{"1 + Z"}});
  const auto fixed = exhaustive_config_search(g, 3, 6);
  CHECK(fixed.size() == 4);
  for (const auto& y : fixed) CHECK(apply(iterate(g, 3), y) == y);
  CHECK_THROWS_AS(exhaustive_config_search(g, 1, 40, 1u << 16), DomainError);
}

TEST_CASE("certified periods") {
  CHECK(certified_period(rule(3, {{"Z^2"}}), 4, 0) == 8u);  // det = Z^8 - 1
  CHECK(certified_period(rule(2, {{"1 + Z"}}), 1, 0) == 1u);  // det = Z
  CHECK(certified_period(rule(2, {{"1"}}), 1, 0) == std::nullopt);
  CHECK(certified_ladder(8) == std::vector<std::size_t>{1, 2, 4, 8});
  CHECK(certified_ladder(255) == std::vector<std::size_t>{1, 3, 15, 255});

  // Every solution repeats with the certified period, and nothing smaller than
  // the least attaining period can be certified.
  std::mt19937_64 rng(42);
  int checked = 0;
  while (checked < 25) {
    const Rule g = random_rule({rng() % 2 ? 3u : 2u, 1 + rng() % 2, -2, 2, 2}, rng);
    if (!is_confined(g)) continue;
    for (std::uint64_t n = 1; n <= 3; ++n) {
      const auto period = certified_period(g, n, 0);
      REQUIRE(period.has_value());
      if (*period * g.bands() > 300) continue;
      ++checked;
      const auto cf = static_cast<std::size_t>(log_fix_count(g, n));
      CHECK(sequence_side_count(g, n, 0, *period) == cf);
      std::size_t least = 0;
      for (std::size_t N = 1; N <= *period && !least; ++N) {
        if (sequence_side_count(g, n, 0, N) == cf) least = N;
      }
      CHECK(*period % least == 0);
    }
  }
}
