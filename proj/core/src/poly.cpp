#include "mlca/poly.hpp"

#include <algorithm>
#include <random>

#include "mlca/error.hpp"

namespace mlca {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw DomainError("polynomials over different prime fields");
}

}  // namespace

Poly::Poly(PrimeField field, std::vector<Residue> coeffs) : field_(field), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= field_.p();
  normalize();
}

Poly Poly::from_ints(PrimeField field, std::span<const std::int64_t> coeffs) {
  std::vector<Residue> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = field.reduce(coeffs[i]);
  return Poly(field, std::move(c));
}

Poly Poly::constant(PrimeField field, Residue c) { return Poly(field, {c}); }

Poly Poly::monomial(PrimeField field, Residue c, std::size_t k) {
  std::vector<Residue> v(k + 1, 0);
  v[k] = c;
  return Poly(field, std::move(v));
}

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t Poly::low_order() const noexcept {
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  return c_.empty() ? 0 : k;
}

Residue Poly::eval(Residue x) const noexcept {
  Residue acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<Residue> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = field_.mul(c_[i], field_.reduce(static_cast<std::int64_t>(i)));
  return Poly(field_, std::move(d));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(field_.inv(lead()));
}

Poly Poly::scaled(Residue s) const {
  std::vector<Residue> d(c_);
  for (auto& c : d) c = field_.mul(c, s);
  return Poly(field_, std::move(d));
}

Poly Poly::shifted_up(std::size_t k) const {
  if (c_.empty()) return *this;
  std::vector<Residue> d(k, 0);
  d.insert(d.end(), c_.begin(), c_.end());
  return Poly(field_, std::move(d));
}

Poly Poly::shifted_down(std::size_t k) const {
  if (k >= c_.size()) return Poly(field_);
  return Poly(field_, std::vector<Residue>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
}

Poly Poly::reversed(std::size_t length) const {
  std::vector<Residue> d(length, 0);
  for (std::size_t i = 0; i < c_.size() && i < length; ++i) d[length - 1 - i] = c_[i];
  return Poly(field_, std::move(d));
}

Poly Poly::operator-() const {
  std::vector<Residue> d(c_);
  for (auto& c : d) c = field_.neg(c);
  return Poly(field_, std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& f = a.field_;
  std::vector<Residue> d(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.add(a[i], b[i]);
  return Poly(f, std::move(d));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& f = a.field_;
  std::vector<Residue> d(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.sub(a[i], b[i]);
  return Poly(f, std::move(d));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& f = a.field_;
  if (a.is_zero() || b.is_zero()) return Poly(f);
  const std::uint64_t p = f.p();
  // Accumulate unreduced products; flush before the 64-bit sum can overflow.
  const std::uint64_t max_term = (p - 1) * (p - 1);
  const std::uint64_t flush_every = max_term == 0 ? a.size() + 1 : std::max<std::uint64_t>(1, (~0ull) / max_term / 2);
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  std::vector<std::uint32_t> pending(acc.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t ai = a.c_[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += ai * b.c_[j];
      if (++pending[i + j] >= flush_every) {
        acc[i + j] %= p;
        pending[i + j] = 0;
      }
    }
  }
  std::vector<Residue> d(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) d[i] = static_cast<Residue>(acc[i] % p);
  return Poly(f, std::move(d));
}

std::string Poly::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(c_[i]);
      continue;
    }
    if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& f = a.field();
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.size() < b.size()) return {Poly(f), a};
  std::vector<Residue> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<Residue> q(a.size() - b.size() + 1, 0);
  const Residue inv_lead = f.inv(b.lead());
  const auto bc = b.coeffs();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Residue coef = f.mul(r[k + bc.size() - 1], inv_lead);
    q[k] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) r[k + j] = f.sub(r[k + j], f.mul(coef, bc[j]));
  }
  r.resize(bc.size() - 1);
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InconsistencyError("inexact polynomial division");
  return q;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& mod) { return (a * b) % mod; }

Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& mod) {
  Poly result = Poly::constant(base.field(), 1) % mod;
  Poly b = base % mod;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, b, mod);
    e >>= 1;
    if (e > 0) b = mul_mod(b, b, mod);
  }
  return result;
}

Poly frobenius_mod(const Poly& a, std::size_t k, const Poly& mod) {
  Poly r = a % mod;
  for (std::size_t i = 0; i < k; ++i) r = pow_mod(r, a.field().p(), mod);
  return r;
}

bool is_irreducible(const Poly& f) {
  const auto deg = f.degree();
  if (!deg || *deg == 0) return false;
  if (*deg == 1) return true;
  const Poly x = Poly::x(f.field());
  Poly xp = x % f;
  for (std::size_t i = 1; i <= *deg / 2; ++i) {
    xp = pow_mod(xp, f.field().p(), f);
    if (!gcd(f, xp - x).is_one()) return false;
  }
  return true;
}

namespace {

// f(X) = g(X^p) for a polynomial with vanishing derivative; returns g, which
// over F_p is also the p-th root of f.
Poly pth_root(const Poly& f) {
  const std::size_t p = f.field().p();
  std::vector<Residue> d;
  for (std::size_t i = 0; i < f.size(); i += p) d.push_back(f[i]);
  return Poly(f.field(), std::move(d));
}

void squarefree_parts(const Poly& f, int scale, std::vector<std::pair<Poly, int>>& out) {
  if (f.size() <= 1) return;
  const Poly df = f.derivative();
  if (df.is_zero()) {
    squarefree_parts(pth_root(f), scale * static_cast<int>(f.field().p()), out);
    return;
  }
  Poly c = gcd(f, df);
  Poly w = exact_div(f, c);
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = exact_div(w, y);
    if (!fac.is_one()) out.emplace_back(fac.monic(), i * scale);
    w = std::move(y);
    c = exact_div(c, w);
    ++i;
  }
  if (!c.is_one()) squarefree_parts(pth_root(c), scale * static_cast<int>(f.field().p()), out);
}

// Splits a squarefree monic polynomial into products of equal-degree irreducibles.
std::vector<std::pair<Poly, std::size_t>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, std::size_t>> out;
  const Poly x = Poly::x(f.field());
  Poly rest = f;
  Poly xp = x % rest;
  for (std::size_t i = 1; rest.size() >= 2 * i + 1; ++i) {
    xp = pow_mod(xp, f.field().p(), rest);
    Poly g = gcd(rest, xp - x);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      rest = exact_div(rest, g);
      xp = xp % rest;
    }
  }
  if (rest.size() > 1) out.emplace_back(rest, rest.size() - 1);
  return out;
}

Poly random_below(const Poly& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> dist(0, f.field().p() - 1);
  std::vector<Residue> c(f.size() - 1);
  for (auto& v : c) v = dist(rng);
  return Poly(f.field(), std::move(c));
}

void equal_degree(const Poly& f, std::size_t d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.size() - 1 == d) {
    out.push_back(f);
    return;
  }
  const auto& fld = f.field();
  for (;;) {
    const Poly a = random_below(f, rng);
    if (a.size() <= 1) continue;
    Poly candidate(fld);
    if (fld.p() == 2) {
      // Absolute trace a + a^2 + ... + a^(2^(d-1)).
      Poly t = a, acc(fld);
      for (std::size_t i = 0; i < d; ++i) {
        acc += t;
        t = mul_mod(t, t, f);
      }
      candidate = acc;
    } else {
      // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2).
      Poly norm = Poly::constant(fld, 1), t = a;
      for (std::size_t i = 0; i < d; ++i) {
        norm = mul_mod(norm, t, f);
        t = pow_mod(t, fld.p(), f);
      }
      candidate = pow_mod(norm, (fld.p() - 1) / 2, f) - Poly::constant(fld, 1);
    }
    Poly g = gcd(f, candidate);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PolyFactor> factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, int>> sqfree;
  squarefree_parts(f.monic(), 1, sqfree);
  std::vector<PolyFactor> out;
  for (const auto& [part, mult] : sqfree) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irreducibles;
      equal_degree(block, d, rng, irreducibles);
      for (auto& g : irreducibles) out.push_back({g.monic(), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    const auto ac = a.factor.coeffs(), bc = b.factor.coeffs();
    if (!std::equal(ac.begin(), ac.end(), bc.begin(), bc.end()))
      return std::lexicographical_compare(ac.begin(), ac.end(), bc.begin(), bc.end());
    return a.multiplicity < b.multiplicity;
  });
  // Merge repeated irreducibles coming from different squarefree layers.
  std::vector<PolyFactor> merged;
  for (auto& pf : out) {
    if (!merged.empty() && merged.back().factor == pf.factor) {
      merged.back().multiplicity += pf.multiplicity;
    } else {
      merged.push_back(std::move(pf));
    }
  }
  return merged;
}

}  // namespace mlca
