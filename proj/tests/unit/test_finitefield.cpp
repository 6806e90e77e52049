#include <set>

#include "doctest.h"
#include "mlca/error.hpp"
#include "mlca/correspondence.hpp"
#include "mlca/finite_field.hpp"
#include "support.hpp"

using namespace mlca;

namespace {

std::vector<ExtElem> all_elements(const ExtFieldPtr& field) {
  std::vector<ExtElem> out;
  const std::uint64_t q = mlca::test::ipow(field->prime_field().p(), field->degree());
  for (std::uint64_t i = 0; i < q; ++i) out.push_back(field->from_index(i));
  return out;
}

// x^(p^k) by repeated multiplication, independent of the Frobenius matrix.
ExtElem slow_frobenius(const ExtElem& x, std::size_t k) {
  ExtElem y = x;
  for (std::size_t i = 0; i < k; ++i) {
    ExtElem z = y.field()->one();
    for (std::uint32_t j = 0; j < y.field()->prime_field().p(); ++j) z = z * y;
    y = z;
  }
  return y;
}

}  // namespace

TEST_CASE("extension field axioms, exhaustively") {
  for (const auto& [p, n] : {std::pair{2u, 4u}, std::pair{3u, 3u}, std::pair{5u, 2u}}) {
    CAPTURE(p);
    const auto field = ExtField::random(p, n, 7);
    const auto elems = all_elements(field);
    const std::uint64_t q = elems.size();
    std::set<std::vector<Residue>> seen;
    for (const auto& x : elems) {
      seen.emplace(x.coords().begin(), x.coords().end());
      CHECK(x.pow(q) == x);
      CHECK(frobenius_power(x, 1) == slow_frobenius(x, 1));
      CHECK(frobenius_power(x, -1) == slow_frobenius(x, n - 1));
      if (!x.is_zero()) {
        CHECK((x * x.inverse()).is_one());
        CHECK((q - 1) % multiplicative_order(x) == 0);
      }
    }
    CHECK(seen.size() == q);
    // Frobenius is additive and multiplicative.
    for (std::size_t i = 0; i < elems.size(); i += 3) {
      for (std::size_t j = 0; j < elems.size(); j += 5) {
        const auto& x = elems[i];
        const auto& y = elems[j];
        CHECK(frobenius_power(x + y, 1) == frobenius_power(x, 1) + frobenius_power(y, 1));
        CHECK(frobenius_power(x * y, 1) == frobenius_power(x, 1) * frobenius_power(y, 1));
      }
    }
  }
}

TEST_CASE("subfields, traces and counts") {
  const std::uint32_t p = 2;
  const std::size_t n = 6;
  const auto field = ExtField::random(p, n, 3);
  const auto elems = all_elements(field);
  for (const std::size_t m : {1u, 2u, 3u, 6u}) {
    std::size_t in_sub = 0;
    for (const auto& x : elems) {
      if (in_subfield(x, m)) ++in_sub;
      CHECK(in_subfield(rel_trace(x, m), m));
    }
    CHECK(in_sub == mlca::test::ipow(p, m));
    CHECK(subfield_elements(field, m).size() == in_sub);
    CHECK(subfield_basis(field, m).size() == m);
  }
  CHECK_THROWS_AS(rel_trace(elems[5], 4), DomainError);
  // Absolute trace is the sum of all conjugates, and trace is transitive
  // (the inner trace F_8 -> F_2 written out as three conjugates).
  for (const auto& x : elems) {
    ExtElem s = field->zero();
    for (std::size_t k = 0; k < n; ++k) s += slow_frobenius(x, k);
    CHECK(s == field->from_residue(abs_trace(x)));
    const ExtElem y = rel_trace(x, 3);
    CHECK(y + slow_frobenius(y, 1) + slow_frobenius(y, 2) == rel_trace(x, 1));
  }
}

TEST_CASE("normal generators") {
  for (const auto& [p, n] : {std::pair{2u, 6u}, std::pair{3u, 4u}, std::pair{2u, 12u}}) {
    const auto field = ExtField::random(p, n, 1);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const ExtElem alpha = find_normal_generator(field, seed);
      CHECK(is_normal_generator(alpha));
      FpMatrix conj(field->prime_field(), n, n);
      for (std::size_t k = 0; k < n; ++k) conj.set_column(k, slow_frobenius(alpha, k).coords());
      CHECK(conj.rank() == n);
    }
  }
  const auto f8 = ExtField::random(2, 3, 0);
  CHECK_FALSE(is_normal_generator(f8->one()));
  CHECK_FALSE(is_normal_generator(f8->zero()));
}

TEST_CASE("random fields are deterministic and irreducible") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Poly a = random_irreducible(3, 5, seed);
    CHECK(a == random_irreducible(3, 5, seed));
    CHECK(is_irreducible(a));
    CHECK(a.lead() == 1);
  }
  CHECK(ExtField::random(2, 9, 4)->modulus() == ExtField::random(2, 9, 4)->modulus());
  CHECK_THROWS_AS(ExtField::create(Poly::from_ints(PrimeField(2), std::vector<std::int64_t>{1, 0, 1})), DomainError);
}

TEST_CASE("linear maps on the power basis") {
  const auto field = ExtField::random(3, 4, 2);
  const auto elems = all_elements(field);
  const FpMatrix frob = frobenius_matrix(*field);
  CHECK(frob == field->frobenius_matrix());
  const ExtElem beta = elems[17];
  const FpMatrix mul = multiplication_matrix(beta);
  for (std::size_t i = 0; i < elems.size(); i += 7) {
    const auto& x = elems[i];
    CHECK(field->element(frob.apply(x.coords())) == slow_frobenius(x, 1));
    CHECK(field->element(mul.apply(x.coords())) == beta * x);
  }
  // The trace pairing is nondegenerate for a separable extension.
  CHECK(trace_pairing_matrix(*field).rank() == 4);
  CHECK(degree_over_prime_field(field->one()) == 1);
  CHECK(degree_over_prime_field(field->generator()) == 4);
}
