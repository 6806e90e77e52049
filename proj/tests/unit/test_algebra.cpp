#include <random>
#include <set>

#include "doctest.h"
#include "mlca/bigint.hpp"
#include "mlca/error.hpp"
#include "mlca/fp_matrix.hpp"
#include "mlca/laurent_matrix.hpp"
#include "mlca/number_theory.hpp"
#include "mlca/poly.hpp"
#include "support.hpp"

using namespace mlca;
using mlca::test::cofactor_det;

namespace {

Poly random_poly(PrimeField f, std::size_t max_len, std::mt19937_64& rng) {
  std::vector<Residue> c(rng() % (max_len + 1));
  for (auto& x : c) x = static_cast<Residue>(rng() % f.p());
  return Poly(f, c);
}

LaurentMatrix random_matrix(PrimeField f, std::size_t r, std::mt19937_64& rng) {
  std::vector<LaurentPoly> e;
  for (std::size_t i = 0; i < r * r; ++i) {
    const std::int64_t off = static_cast<std::int64_t>(rng() % 5) - 2;
    e.emplace_back(random_poly(f, 3, rng), off);
  }
  return LaurentMatrix(f, r, std::move(e));
}

FpMatrix random_fp(PrimeField f, std::size_t rows, std::size_t cols, std::mt19937_64& rng, unsigned density = 1) {
  FpMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (rng() % density == 0) m(i, j) = static_cast<Residue>(rng() % f.p());
    }
  }
  return m;
}

FpMatrix naive_product(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Residue s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s = a.field().add(s, a.field().mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  }
  return c;
}

// log_p of the size of the column space, by enumerating every combination.
std::size_t brute_rank(const FpMatrix& m) {
  std::set<std::vector<Residue>> image;
  mlca::test::for_each_config(m.field(), 1, m.cols(), [&](const PeriodicConfig& v) { image.insert(m.apply(v.values())); });
  return static_cast<std::size_t>(mlca::test::log_p_exact(image.size(), m.field().p()));
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const PrimeField f(7);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.pow(3, 6) == 1);
  CHECK_THROWS_AS(f.inv(0), DomainError);
  CHECK_THROWS_AS(PrimeField(9), DomainError);
  const PrimeField big(PrimeField::kMaxPrime);
  CHECK(big.mul(big.p() - 1, big.p() - 1) == 1);
}

TEST_CASE("poly division identity and gcd") {
  std::mt19937_64 rng(11);
  for (const std::uint32_t p : {2u, 3u, 5u, 65521u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      const Poly a = random_poly(f, 8, rng);
      const Poly b = random_poly(f, 5, rng);
      if (b.is_zero()) {
        CHECK_THROWS_AS(divmod(a, b), DomainError);
        continue;
      }
      const auto [q, r] = divmod(a, b);
      CHECK(q * b + r == a);
      CHECK((r.is_zero() || *r.degree() < *b.degree()));
      const Poly g = gcd(a, b);
      CHECK((a % g).is_zero());
      CHECK((b % g).is_zero());
      CHECK(exact_div(a * b, b) == a);
    }
  }
}

TEST_CASE("factor reassembles into irreducibles") {
  std::mt19937_64 rng(5);
  for (const std::uint32_t p : {2u, 3u, 7u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 60; ++trial) {
      Poly a = random_poly(f, 10, rng);
      if (a.is_zero()) continue;
      a = a.monic();
      Poly prod = Poly::constant(f, 1);
      for (const auto& [g, m] : factor(a, trial)) {
        CHECK(is_irreducible(g));
        CHECK(g.lead() == 1);
        for (int i = 0; i < m; ++i) prod *= g;
      }
      CHECK(prod == a);
    }
  }
}

TEST_CASE("irreducibility agrees with trial division") {
  for (const std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    // Every monic polynomial of degree 1..4.
    for (std::size_t d = 1; d <= 4; ++d) {
      mlca::test::for_each_config(f, 1, d, [&](const PeriodicConfig& low) {
        std::vector<Residue> c(low.values().begin(), low.values().end());
        c.push_back(1);
        const Poly g(f, c);
        bool has_factor = false;
        for (std::size_t e = 1; e <= d / 2 && !has_factor; ++e) {
          mlca::test::for_each_config(f, 1, e, [&](const PeriodicConfig& l2) {
            std::vector<Residue> c2(l2.values().begin(), l2.values().end());
            c2.push_back(1);
            if ((g % Poly(f, c2)).is_zero()) has_factor = true;
          });
        }
        CHECK(is_irreducible(g) == !has_factor);
      });
    }
  }
}

TEST_CASE("laurent polynomial canonical form") {
  const PrimeField f(3);
  const LaurentPoly x = LaurentPoly::from_terms(f, {{-1, 1}, {3, 1}, {3, 2}, {0, 0}});
  CHECK(x.val() == -1);
  CHECK(x.deg() == -1);
  CHECK(x.to_string() == "Z^-1");
  const LaurentPoly y = LaurentPoly::from_terms(f, {{-2, 1}, {1, 2}});
  CHECK(deg_val(y) == DegVal{1, -2});
  CHECK(y.inverted_variable().to_string() == "2*Z^-1 + Z^2");
  CHECK((y * y.inverted_variable()).coeff(0) == f.add(1, f.mul(2, 2)));
  CHECK(y.pow(3) == y * y * y);
  CHECK_THROWS_AS(LaurentPoly(f).val(), DomainError);
}

TEST_CASE("laurent_det matches cofactor expansion") {
  std::mt19937_64 rng(3);
  for (const std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (std::size_t r = 1; r <= 4; ++r) {
      for (int trial = 0; trial < 25; ++trial) {
        const LaurentMatrix m = random_matrix(f, r, rng);
        CHECK(laurent_det(m) == cofactor_det(m));
      }
    }
  }
}

TEST_CASE("char_poly satisfies Cayley-Hamilton") {
  std::mt19937_64 rng(4);
  for (const std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    for (std::size_t r = 1; r <= 4; ++r) {
      for (int trial = 0; trial < 15; ++trial) {
        const LaurentMatrix m = random_matrix(f, r, rng);
        const auto c = char_poly(m);
        REQUIRE(c.size() == r + 1);
        CHECK(c[r].is_one());
        CHECK(evaluate_poly_at(c, m).is_zero());
        const LaurentPoly d = laurent_det(m);
        CHECK(c[0] == (r % 2 == 0 ? d : -d));
      }
    }
  }
}

TEST_CASE("matrix power by squaring") {
  std::mt19937_64 rng(8);
  const PrimeField f(3);
  const LaurentMatrix m = random_matrix(f, 2, rng);
  LaurentMatrix acc = LaurentMatrix::identity(f, 2);
  for (std::uint64_t n = 0; n <= 7; ++n) {
    CHECK(matrix_power(m, n) == acc);
    acc = acc * m;
  }
}

TEST_CASE("FpMatrix product matches the triple loop on every kernel path") {
  std::mt19937_64 rng(1);
  struct Shape {
    std::uint32_t p;
    std::size_t n, k, m;
  };
  for (const Shape s : {Shape{2, 37, 130, 70}, Shape{3, 40, 90, 33}, Shape{65521, 20, 30, 25},
                        Shape{2147483647u, 9, 12, 7}}) {
    const PrimeField f(s.p);
    const FpMatrix a = random_fp(f, s.n, s.k, rng);
    const FpMatrix b = random_fp(f, s.k, s.m, rng);
    CHECK(a * b == naive_product(a, b));
  }
}

TEST_CASE("FpMatrix rank, kernel and det against enumeration") {
  std::mt19937_64 rng(2);
  for (const std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 6;
      const FpMatrix m = random_fp(f, rows, cols, rng, 2);
      const std::size_t rank = m.rank();
      CHECK(rank == brute_rank(m));
      const auto kernel = m.kernel_basis();
      CHECK(kernel.size() == cols - rank);
      for (const auto& v : kernel) CHECK(m.apply(v) == std::vector<Residue>(rows, 0));
      if (rows == cols) CHECK((m.det() != 0) == (rank == rows));
    }
  }
  // Large GF(2) and general-p paths.
  for (const std::uint32_t p : {2u, 5u}) {
    const PrimeField f(p);
    const FpMatrix a = random_fp(f, 150, 40, rng);
    const FpMatrix b = random_fp(f, 40, 160, rng);
    CHECK((a * b).rank() == 40);
    CHECK((a * b).kernel_basis().size() == 120);
  }
}

TEST_CASE("number theory helpers") {
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(p_adic_valuation(24, 2) == 3);
  CHECK(lcm_u64(4, 6) == 12);
  CHECK_THROWS_AS(checked_pow(2, 64), DomainError);
  for (std::uint64_t n = 1; n <= 200; ++n) {
    int brute = 1;
    std::uint64_t m = n;
    for (std::uint64_t q = 2; q <= m; ++q) {
      if (m % q) continue;
      m /= q;
      if (m % q == 0) {
        brute = 0;
        break;
      }
      brute = -brute;
    }
    CHECK(mobius(n) == brute);
  }
  std::uint64_t big = 600851475143ULL;
  std::uint64_t prod = 1;
  for (const auto& [q, e] : factor_u64(big)) {
    CHECK(is_prime(q));
    for (int i = 0; i < e; ++i) prod *= q;
  }
  CHECK(prod == big);
}

TEST_CASE("big number rendering") {
  CHECK(to_decimal_string(big_pow(2, 100)) == "1267650600228229401496703205376");
  CHECK(to_fixed_string(BigRational(-7, 3), 3) == "-2.333");
  CHECK(to_fixed_string(BigRational(275, 128)) == "2.148437");
}
