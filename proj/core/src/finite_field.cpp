#include "mlca/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <tuple>

#include "mlca/error.hpp"
#include "mlca/number_theory.hpp"

namespace mlca {

ExtField::ExtField(Poly modulus)
    : modulus_(std::move(modulus)), n_(*modulus_.degree()), frob_(modulus_.field(), n_, n_) {
  const Poly xp = pow_mod(Poly::x(prime_field()), prime_field().p(), modulus_);
  Poly col = Poly::constant(prime_field(), 1) % modulus_;
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) frob_(i, j) = col[i];
    col = mul_mod(col, xp, modulus_);
  }
}

std::shared_ptr<const ExtField> ExtField::create(const Poly& modulus) {
  if (modulus.is_zero() || modulus.lead() != 1) throw DomainError("field modulus must be monic");
  if (!is_irreducible(modulus)) throw DomainError("field modulus " + modulus.to_string("x") + " is reducible");
  return std::shared_ptr<const ExtField>(new ExtField(modulus));
}

std::shared_ptr<const ExtField> ExtField::random(std::uint32_t p, std::size_t degree, std::uint64_t seed) {
  // Fields are immutable, and the irreducibility search dominates at large
  // degree, so every (p, N, seed) is built once per process.
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::size_t, std::uint64_t>, std::shared_ptr<const ExtField>> cache;
  const auto key = std::make_tuple(p, degree, seed);
  {
    const std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto field = create(random_irreducible(p, degree, seed));
  const std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(field)).first->second;
}

ExtElem ExtField::zero() const { return ExtElem(shared_from_this(), std::vector<Residue>(n_, 0)); }

ExtElem ExtField::one() const { return from_residue(1); }

ExtElem ExtField::generator() const {
  std::vector<Residue> c(n_, 0);
  if (n_ == 1) {
    // x reduces to minus the constant term of the linear modulus.
    c[0] = prime_field().neg(modulus_[0]);
  } else {
    c[1] = 1;
  }
  return ExtElem(shared_from_this(), std::move(c));
}

ExtElem ExtField::from_residue(Residue c) const {
  std::vector<Residue> v(n_, 0);
  v[0] = c % characteristic();
  return ExtElem(shared_from_this(), std::move(v));
}

ExtElem ExtField::element(std::vector<Residue> coords) const {
  if (coords.size() != n_) throw DomainError("element needs exactly N coordinates");
  for (auto& c : coords) c %= characteristic();
  return ExtElem(shared_from_this(), std::move(coords));
}

ExtElem ExtField::from_index(std::uint64_t index) const {
  std::vector<Residue> c(n_, 0);
  for (std::size_t i = 0; i < n_ && index > 0; ++i) {
    c[i] = static_cast<Residue>(index % characteristic());
    index /= characteristic();
  }
  return ExtElem(shared_from_this(), std::move(c));
}

ExtElem::ExtElem(ExtFieldPtr field, std::vector<Residue> coords) : field_(std::move(field)), c_(std::move(coords)) {}

bool ExtElem::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](Residue v) { return v == 0; });
}

bool ExtElem::is_one() const noexcept {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](Residue v) { return v == 0; });
}

Poly ExtElem::as_poly() const { return Poly(field_->prime_field(), c_); }

namespace {

void require_same(const ExtElem& a, const ExtElem& b) {
  if (a.field() != b.field()) throw DomainError("elements of different field instances");
}

ExtElem from_poly(const ExtFieldPtr& f, const Poly& p) {
  std::vector<Residue> c(f->degree(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i];
  return f->element(std::move(c));
}

}  // namespace

ExtElem ExtElem::operator-() const {
  std::vector<Residue> d(c_);
  const auto& f = field_->prime_field();
  for (auto& v : d) v = f.neg(v);
  return ExtElem(field_, std::move(d));
}

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
  require_same(a, b);
  const auto& f = a.field_->prime_field();
  std::vector<Residue> d(a.c_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.add(a.c_[i], b.c_[i]);
  return ExtElem(a.field_, std::move(d));
}

ExtElem operator-(const ExtElem& a, const ExtElem& b) {
  require_same(a, b);
  const auto& f = a.field_->prime_field();
  std::vector<Residue> d(a.c_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.sub(a.c_[i], b.c_[i]);
  return ExtElem(a.field_, std::move(d));
}

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
  require_same(a, b);
  return from_poly(a.field_, mul_mod(a.as_poly(), b.as_poly(), a.field_->modulus()));
}

bool operator==(const ExtElem& a, const ExtElem& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

ExtElem ExtElem::scaled(Residue s) const {
  std::vector<Residue> d(c_);
  const auto& f = field_->prime_field();
  for (auto& v : d) v = f.mul(v, s);
  return ExtElem(field_, std::move(d));
}

ExtElem ExtElem::pow(std::uint64_t e) const {
  return from_poly(field_, pow_mod(as_poly(), e, field_->modulus()));
}

ExtElem ExtElem::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in an extension field");
  const std::uint64_t q = checked_pow(field_->characteristic(), field_->degree());
  return pow(q - 2);
}

Poly random_irreducible(std::uint32_t p, std::size_t degree, std::uint64_t seed) {
  if (degree == 0) throw DomainError("irreducible polynomials need degree >= 1");
  const PrimeField f(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Residue> dist(0, p - 1);
  const std::size_t attempts = 200 * degree + 1000;
  for (std::size_t a = 0; a < attempts; ++a) {
    std::vector<Residue> c(degree + 1);
    for (std::size_t i = 0; i < degree; ++i) c[i] = dist(rng);
    c[degree] = 1;
    if (degree > 1 && c[0] == 0) continue;
    Poly candidate(f, std::move(c));
    if (is_irreducible(candidate)) return candidate;
  }
  throw SearchExhaustedError("no irreducible polynomial of degree " + std::to_string(degree) + " found");
}

ExtElem frobenius_power(const ExtElem& x, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(x.field()->degree());
  std::int64_t steps = k % n;
  if (steps < 0) steps += n;
  const FpMatrix& frob = x.field()->frobenius_matrix();
  std::vector<Residue> v(x.coords().begin(), x.coords().end());
  for (std::int64_t i = 0; i < steps; ++i) v = frob.apply(v);
  return ExtElem(x.field(), std::move(v));
}

ExtElem rel_trace(const ExtElem& x, std::size_t sub_degree) {
  const std::size_t n = x.field()->degree();
  if (sub_degree == 0 || n % sub_degree != 0) {
    throw DomainError("relative trace needs M | N (M = " + std::to_string(sub_degree) + ", N = " + std::to_string(n) +
                      ")");
  }
  ExtElem acc = x.field()->zero();
  ExtElem conj = x;
  for (std::size_t i = 0; i < n / sub_degree; ++i) {
    acc += conj;
    conj = frobenius_power(conj, static_cast<std::int64_t>(sub_degree));
  }
  return acc;
}

Residue abs_trace(const ExtElem& x) { return rel_trace(x, 1).coords()[0]; }

bool in_subfield(const ExtElem& x, std::size_t sub_degree) {
  return frobenius_power(x, static_cast<std::int64_t>(sub_degree)) == x;
}

bool is_normal_in_subfield(const ExtElem& alpha, std::size_t sub_degree) {
  const auto& f = *alpha.field();
  FpMatrix rows(f.prime_field(), sub_degree, f.degree());
  ExtElem conj = alpha;
  for (std::size_t i = 0; i < sub_degree; ++i) {
    for (std::size_t j = 0; j < f.degree(); ++j) rows(i, j) = conj.coords()[j];
    conj = frobenius_power(conj, 1);
  }
  return rows.rank() == sub_degree;
}

bool is_normal_generator(const ExtElem& alpha) { return is_normal_in_subfield(alpha, alpha.field()->degree()); }

ExtElem find_normal_generator(const ExtFieldPtr& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Residue> dist(0, field->characteristic() - 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Residue> c(field->degree());
    for (auto& v : c) v = dist(rng);
    ExtElem candidate = field->element(std::move(c));
    if (is_normal_generator(candidate)) return candidate;
  }
  throw SearchExhaustedError("no normal basis generator found");
}

FpMatrix trace_pairing_matrix(const ExtField& field) {
  const std::size_t n = field.degree();
  std::vector<Residue> traces(2 * n - 1);
  ExtElem pw = field.one();
  const ExtElem x = field.generator();
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    traces[k] = abs_trace(pw);
    pw = pw * x;
  }
  FpMatrix g(field.prime_field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = traces[i + j];
  }
  return g;
}

FpMatrix multiplication_matrix(const ExtElem& beta) {
  const auto& f = *beta.field();
  const std::size_t n = f.degree();
  FpMatrix m(f.prime_field(), n, n);
  ExtElem col = beta;
  const ExtElem x = f.generator();
  for (std::size_t j = 0; j < n; ++j) {
    m.set_column(j, col.coords());
    col = col * x;
  }
  return m;
}

FpMatrix frobenius_matrix(const ExtField& field) { return field.frobenius_matrix(); }

std::vector<ExtElem> subfield_basis(const ExtFieldPtr& field, std::size_t sub_degree) {
  if (sub_degree == 0 || field->degree() % sub_degree != 0) throw DomainError("subfield degree must divide N");
  const FpMatrix fixed = field->frobenius_matrix().pow(sub_degree) - FpMatrix::identity(field->prime_field(), field->degree());
  std::vector<ExtElem> out;
  for (auto& v : fixed.kernel_basis()) out.push_back(field->element(std::move(v)));
  return out;
}

std::size_t degree_over_prime_field(const ExtElem& beta) {
  const std::size_t n = beta.field()->degree();
  for (std::size_t k = 1; k <= n; ++k) {
    if (n % k == 0 && in_subfield(beta, k)) return k;
  }
  return n;
}

std::uint64_t multiplicative_order(const ExtElem& beta) {
  if (beta.is_zero()) throw DomainError("multiplicative order of zero");
  const std::size_t k = degree_over_prime_field(beta);
  const std::uint64_t group = checked_pow(beta.field()->characteristic(), k) - 1;
  std::uint64_t order = group;
  for (const auto& [q, e] : factor_u64(group)) {
    for (int i = 0; i < e && order % q == 0; ++i) {
      if (!beta.pow(order / q).is_one()) break;
      order /= q;
    }
  }
  return order;
}

}  // namespace mlca
