#include "mlca/laurent_matrix.hpp"

#include <algorithm>

#include "mlca/error.hpp"

namespace mlca {

LaurentMatrix::LaurentMatrix(PrimeField field, std::size_t r)
    : field_(field), r_(r), e_(r * r, LaurentPoly(field)) {}

LaurentMatrix::LaurentMatrix(PrimeField field, std::size_t r, std::vector<LaurentPoly> entries)
    : field_(field), r_(r), e_(std::move(entries)) {
  if (e_.size() != r * r) throw DomainError("matrix needs r*r entries");
  for (const auto& x : e_) {
    if (!(x.field() == field_)) throw DomainError("matrix entry over a different prime field");
  }
}

LaurentMatrix LaurentMatrix::identity(PrimeField field, std::size_t r) { return shift(field, r, 0); }

LaurentMatrix LaurentMatrix::shift(PrimeField field, std::size_t r, std::int64_t k) {
  LaurentMatrix m(field, r);
  for (std::size_t i = 0; i < r; ++i) m.e_[i * r + i] = LaurentPoly::monomial(field, 1, k);
  return m;
}

LaurentMatrix LaurentMatrix::from_terms(
    PrimeField field, const std::vector<std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>>& rows) {
  const std::size_t r = rows.size();
  std::vector<LaurentPoly> e;
  e.reserve(r * r);
  for (const auto& row : rows) {
    if (row.size() != r) throw DomainError("matrix rows must have r entries");
    for (const auto& terms : row) e.push_back(LaurentPoly::from_terms(field, terms));
  }
  return LaurentMatrix(field, r, std::move(e));
}

bool LaurentMatrix::is_zero() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [](const LaurentPoly& x) { return x.is_zero(); });
}

std::optional<std::int64_t> LaurentMatrix::min_exponent() const noexcept {
  std::optional<std::int64_t> m;
  for (const auto& x : e_) {
    if (!x.is_zero()) m = m ? std::min(*m, x.val()) : x.val();
  }
  return m;
}

std::optional<std::int64_t> LaurentMatrix::max_exponent() const noexcept {
  std::optional<std::int64_t> m;
  for (const auto& x : e_) {
    if (!x.is_zero()) m = m ? std::max(*m, x.deg()) : x.deg();
  }
  return m;
}

std::vector<Residue> LaurentMatrix::coefficient(std::int64_t e) const {
  std::vector<Residue> out(r_ * r_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = e_[i].coeff(e);
  return out;
}

LaurentMatrix LaurentMatrix::shifted(std::int64_t k) const {
  LaurentMatrix m = *this;
  for (auto& x : m.e_) x = x.shifted(k);
  return m;
}

LaurentMatrix LaurentMatrix::scaled(Residue s) const {
  LaurentMatrix m = *this;
  for (auto& x : m.e_) x = x.scaled(s);
  return m;
}

LaurentMatrix LaurentMatrix::inverted_variable() const {
  LaurentMatrix m = *this;
  for (auto& x : m.e_) x = x.inverted_variable();
  return m;
}

LaurentMatrix LaurentMatrix::pow(std::uint64_t n) const {
  LaurentMatrix result = identity(field_, r_);
  LaurentMatrix base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

namespace {

void require_compatible(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (!(a.field() == b.field()) || a.dim() != b.dim()) throw DomainError("incompatible Laurent matrices");
}

}  // namespace

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_compatible(a, b);
  LaurentMatrix m = a;
  for (std::size_t i = 0; i < m.e_.size(); ++i) m.e_[i] += b.e_[i];
  return m;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_compatible(a, b);
  LaurentMatrix m = a;
  for (std::size_t i = 0; i < m.e_.size(); ++i) m.e_[i] -= b.e_[i];
  return m;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_compatible(a, b);
  const std::size_t r = a.r_;
  LaurentMatrix m(a.field_, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      const auto& aik = a.e_[i * r + k];
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j) {
        const auto& bkj = b.e_[k * r + j];
        if (!bkj.is_zero()) m.e_[i * r + j] += aik * bkj;
      }
    }
  }
  return m;
}

std::string LaurentMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < r_; ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < r_; ++j) {
      if (j > 0) out += ", ";
      out += e_[i * r_ + j].to_string();
    }
    out += "]";
  }
  return out + "]";
}

std::pair<std::int64_t, std::vector<Poly>> clear_offsets(const LaurentMatrix& m) {
  const std::int64_t lo = m.min_exponent().value_or(0);
  std::vector<Poly> out;
  out.reserve(m.entries().size());
  for (const auto& x : m.entries()) {
    if (x.is_zero()) {
      out.emplace_back(m.field());
    } else {
      out.push_back(x.unit_part().shifted_up(static_cast<std::size_t>(x.offset() - lo)));
    }
  }
  return {lo, std::move(out)};
}

LaurentPoly laurent_det(const LaurentMatrix& m) {
  const std::size_t n = m.dim();
  const auto& f = m.field();
  if (n == 0) return LaurentPoly::constant(f, 1);
  auto [lo, a] = clear_offsets(m);
  auto at = [&a, n](std::size_t i, std::size_t j) -> Poly& { return a[i * n + j]; };

  bool negate = false;
  Poly prev = Poly::constant(f, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && at(piv, k).is_zero()) ++piv;
      if (piv == n) return LaurentPoly(f);
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(piv, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = exact_div(at(i, j) * at(k, k) - at(i, k) * at(k, j), prev);
      }
      at(i, k) = Poly(f);
    }
    prev = at(k, k);
  }
  Poly d = at(n - 1, n - 1);
  if (negate) d = -d;
  return LaurentPoly(std::move(d), lo * static_cast<std::int64_t>(n));
}

std::vector<LaurentPoly> char_poly(const LaurentMatrix& m) {
  const std::size_t n = m.dim();
  const auto& f = m.field();
  const LaurentPoly zero(f);
  const LaurentPoly one = LaurentPoly::constant(f, 1);
  auto a = [&m](std::size_t i, std::size_t j) -> const LaurentPoly& { return m(i, j); };

  // Berkowitz: peel off the leading row/column from the bottom-right corner
  // upwards. `vec` holds the characteristic polynomial of the trailing
  // principal submatrix, highest degree first.
  std::vector<LaurentPoly> vec{one};
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t sub = n - k - 1;  // size of trailing block A1 = rows/cols k+1..n-1
    // Toeplitz first column: 1, -a_kk, -R C, -R A1 C, ..., -R A1^{sub-1} C.
    std::vector<LaurentPoly> col;
    col.reserve(sub + 2);
    col.push_back(one);
    col.push_back(-a(k, k));
    std::vector<LaurentPoly> v(sub, zero);  // A1^i C
    for (std::size_t i = 0; i < sub; ++i) v[i] = a(k + 1 + i, k);
    for (std::size_t pw = 0; pw < sub; ++pw) {
      LaurentPoly rc = zero;
      for (std::size_t i = 0; i < sub; ++i) rc += a(k, k + 1 + i) * v[i];
      col.push_back(-rc);
      if (pw + 1 < sub) {
        std::vector<LaurentPoly> next(sub, zero);
        for (std::size_t i = 0; i < sub; ++i) {
          for (std::size_t j = 0; j < sub; ++j) next[i] += a(k + 1 + i, k + 1 + j) * v[j];
        }
        v = std::move(next);
      }
    }
    // (sub+2) x (sub+1) lower-triangular Toeplitz times vec.
    std::vector<LaurentPoly> out(sub + 2, zero);
    for (std::size_t i = 0; i < sub + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, sub); ++j) out[i] += col[i - j] * vec[j];
    }
    vec = std::move(out);
  }
  std::reverse(vec.begin(), vec.end());
  return vec;
}

LaurentMatrix matrix_power(const LaurentMatrix& m, std::uint64_t n) { return m.pow(n); }

LaurentMatrix evaluate_poly_at(const std::vector<LaurentPoly>& coeffs, const LaurentMatrix& m) {
  LaurentMatrix acc(m.field(), m.dim());
  const std::size_t r = m.dim();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    // Horner step: acc = acc * m + c_j * I.
    std::vector<LaurentPoly> diag(r * r, LaurentPoly(m.field()));
    for (std::size_t i = 0; i < r; ++i) diag[i * r + i] = *it;
    acc = acc * m + LaurentMatrix(m.field(), r, std::move(diag));
  }
  return acc;
}

}  // namespace mlca
