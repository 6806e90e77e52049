#include "mlca/fp_matrix.hpp"

#include <algorithm>

#include "mlca/error.hpp"

namespace mlca {

FpMatrix::FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), d_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(PrimeField field, std::size_t n) {
  FpMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Residue> FpMatrix::column(std::size_t j) const {
  std::vector<Residue> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void FpMatrix::set_column(std::size_t j, std::span<const Residue> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool FpMatrix::is_zero() const noexcept {
  return std::all_of(d_.begin(), d_.end(), [](Residue x) { return x == 0; });
}

namespace {

void require_shape(const FpMatrix& a, const FpMatrix& b) {
  if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("F_p matrix shape mismatch");
  }
}

}  // namespace

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  require_shape(a, b);
  FpMatrix m = a;
  for (std::size_t i = 0; i < m.d_.size(); ++i) m.d_[i] = a.field_.add(a.d_[i], b.d_[i]);
  return m;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  require_shape(a, b);
  FpMatrix m = a;
  for (std::size_t i = 0; i < m.d_.size(); ++i) m.d_[i] = a.field_.sub(a.d_[i], b.d_[i]);
  return m;
}

namespace {

std::vector<std::uint64_t> pack_rows(const FpMatrix& m, std::size_t words) {
  std::vector<std::uint64_t> bits(m.rows() * words, 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j)) bits[i * words + j / 64] |= 1ull << (j % 64);
    }
  }
  return bits;
}

}  // namespace

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (!(a.field_ == b.field_) || a.cols_ != b.rows_) throw DomainError("F_p matrix product shape mismatch");
  const std::uint64_t p = a.field_.p();
  FpMatrix m(a.field_, a.rows_, b.cols_);
  if (p == 2) {
    // Row i of the product is the XOR of the rows of b selected by row i of a.
    const std::size_t words = (b.cols_ + 63) / 64;
    const auto bb = pack_rows(b, words);
    std::vector<std::uint64_t> acc(words);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (!a.d_[i * a.cols_ + k]) continue;
        const std::uint64_t* src = bb.data() + k * words;
        for (std::size_t w = 0; w < words; ++w) acc[w] ^= src[w];
      }
      for (std::size_t j = 0; j < b.cols_; ++j) m.d_[i * b.cols_ + j] = (acc[j / 64] >> (j % 64)) & 1;
    }
    return m;
  }
  const std::uint64_t sq = (p - 1) * (p - 1);
  if (sq * a.cols_ < (1ull << 32)) {
    // Narrow accumulators never overflow here, so reduce once per entry.
    std::vector<std::uint32_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint32_t aik = a.d_[i * a.cols_ + k];
        if (aik == 0) continue;
        const Residue* brow = b.d_.data() + k * b.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += aik * brow[j];
      }
      for (std::size_t j = 0; j < b.cols_; ++j) m.d_[i * b.cols_ + j] = static_cast<Residue>(acc[j] % p);
    }
    return m;
  }
  std::vector<std::uint64_t> acc(b.cols_);
  // Safe number of unreduced products per accumulator.
  const std::uint64_t budget = std::max<std::uint64_t>(1, (~0ull) / (sq + 1) / 2);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t used = 0;
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t aik = a.d_[i * a.cols_ + k];
      if (aik == 0) continue;
      const Residue* brow = b.d_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += aik * brow[j];
      if (++used == budget) {
        for (auto& x : acc) x %= p;
        used = 0;
      }
    }
    for (std::size_t j = 0; j < b.cols_; ++j) m.d_[i * b.cols_ + j] = static_cast<Residue>(acc[j] % p);
  }
  return m;
}

std::vector<Residue> FpMatrix::apply(std::span<const Residue> v) const {
  if (v.size() != cols_) throw DomainError("F_p matrix-vector shape mismatch");
  const std::uint64_t p = field_.p();
  std::vector<Residue> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    const Residue* r = d_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
      acc += static_cast<std::uint64_t>(r[j]) * v[j];
      if (acc >= (1ull << 62)) acc %= p;
    }
    out[i] = static_cast<Residue>(acc % p);
  }
  return out;
}

FpMatrix FpMatrix::scaled(Residue s) const {
  FpMatrix m = *this;
  for (auto& x : m.d_) x = field_.mul(x, s);
  return m;
}

FpMatrix FpMatrix::pow(std::uint64_t e) const {
  if (rows_ != cols_) throw DomainError("power of a non-square matrix");
  FpMatrix result = identity(field_, rows_);
  FpMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

std::vector<std::size_t> row_reduce(FpMatrix& m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    }
    const Residue inv = f.inv(m(row, col));
    if (inv != 1) {
      for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      const Residue factor = m(i, col);
      if (factor == 0) continue;
      const Residue neg = f.neg(factor);
      for (std::size_t j = col; j < m.cols(); ++j) {
        const Residue v = m(row, j);
        if (v != 0) m(i, j) = f.add(m(i, j), f.mul(neg, v));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

namespace {

// Forward elimination over F_2 with rows packed into 64-bit words.
std::size_t rank_gf2(const FpMatrix& m) {
  const std::size_t words = (m.cols() + 63) / 64;
  auto bits = pack_rows(m, words);
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t mask = 1ull << (col % 64);
    std::size_t piv = row;
    while (piv < m.rows() && !(bits[piv * words + w] & mask)) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) std::swap_ranges(bits.begin() + piv * words, bits.begin() + (piv + 1) * words, bits.begin() + row * words);
    const std::uint64_t* src = bits.data() + row * words;
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      std::uint64_t* dst = bits.data() + i * words;
      if (dst[w] & mask) {
        for (std::size_t k = w; k < words; ++k) dst[k] ^= src[k];
      }
    }
    ++row;
  }
  return row;
}

// Forward elimination with 64-bit rows reduced lazily: a row is only taken
// mod p when its accumulated error budget runs out or it becomes a pivot.
std::size_t rank_general(const FpMatrix& in) {
  const auto& f = in.field();
  const std::uint64_t p = f.p();
  const std::size_t rows = in.rows(), cols = in.cols();
  std::vector<std::uint64_t> d(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) d[i * cols + j] = in(i, j);
  }
  const std::uint64_t step = (p - 1) * (p - 1) + (p - 1);
  const std::uint64_t budget = std::max<std::uint64_t>(1, (~0ull - p) / step);
  std::vector<std::uint64_t> used(rows, 0);
  auto reduce_row = [&](std::size_t i, std::size_t from) {
    for (std::size_t j = from; j < cols; ++j) d[i * cols + j] %= p;
    used[i] = 0;
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && d[piv * cols + col] % p == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row) {
      std::swap_ranges(d.begin() + piv * cols, d.begin() + (piv + 1) * cols, d.begin() + row * cols);
      std::swap(used[piv], used[row]);
    }
    reduce_row(row, col);
    const std::uint64_t inv = f.inv(static_cast<Residue>(d[row * cols + col]));
    for (std::size_t j = col; j < cols; ++j) d[row * cols + j] = d[row * cols + j] * inv % p;
    const std::uint64_t* src = d.data() + row * cols;
    for (std::size_t i = row + 1; i < rows; ++i) {
      std::uint64_t* dst = d.data() + i * cols;
      const std::uint64_t lead = dst[col] % p;
      if (lead == 0) continue;
      if (++used[i] >= budget) reduce_row(i, col);
      // dst - lead * src, kept nonnegative by adding a multiple of p.
      const std::uint64_t factor = p - lead;
      for (std::size_t j = col; j < cols; ++j) dst[j] += factor * src[j];
    }
    ++row;
  }
  return row;
}

}  // namespace

std::size_t FpMatrix::rank() const { return field_.p() == 2 ? rank_gf2(*this) : rank_general(*this); }

std::vector<std::vector<Residue>> FpMatrix::kernel_basis() const {
  FpMatrix rref = *this;
  const auto pivots = row_reduce(rref);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Residue>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(cols_, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field_.neg(rref(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

Residue FpMatrix::det() const {
  if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
  FpMatrix m = *this;
  Residue d = 1;
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t piv = col;
    while (piv < rows_ && m(piv, col) == 0) ++piv;
    if (piv == rows_) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(col, j));
      d = field_.neg(d);
    }
    d = field_.mul(d, m(col, col));
    const Residue inv = field_.inv(m(col, col));
    for (std::size_t i = col + 1; i < rows_; ++i) {
      const Residue factor = field_.mul(m(i, col), inv);
      if (factor == 0) continue;
      for (std::size_t j = col; j < cols_; ++j) m(i, j) = field_.sub(m(i, j), field_.mul(factor, m(col, j)));
    }
  }
  return d;
}

}  // namespace mlca
