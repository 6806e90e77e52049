#include "mlca/laurent.hpp"

#include <algorithm>

#include "mlca/error.hpp"

namespace mlca {

LaurentPoly::LaurentPoly(Poly poly, std::int64_t offset) : unit_(std::move(poly)), offset_(offset) {
  canonicalize();
}

LaurentPoly LaurentPoly::monomial(PrimeField field, Residue c, std::int64_t e) {
  return LaurentPoly(Poly::constant(field, c), e);
}

LaurentPoly LaurentPoly::from_terms(PrimeField field,
                                    const std::vector<std::pair<std::int64_t, std::int64_t>>& terms) {
  if (terms.empty()) return LaurentPoly(field);
  std::int64_t lo = terms.front().first, hi = lo;
  for (const auto& [e, c] : terms) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  std::vector<Residue> coeffs(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [e, c] : terms) {
    auto& slot = coeffs[static_cast<std::size_t>(e - lo)];
    slot = field.add(slot, field.reduce(c));
  }
  return LaurentPoly(Poly(field, std::move(coeffs)), lo);
}

void LaurentPoly::canonicalize() {
  if (unit_.is_zero()) {
    offset_ = 0;
    return;
  }
  const std::size_t k = unit_.low_order();
  if (k > 0) {
    unit_ = unit_.shifted_down(k);
    offset_ += static_cast<std::int64_t>(k);
  }
}

std::int64_t LaurentPoly::val() const {
  if (is_zero()) throw DomainError("valuation of the zero Laurent polynomial");
  return offset_;
}

std::int64_t LaurentPoly::deg() const {
  if (is_zero()) throw DomainError("degree of the zero Laurent polynomial");
  return offset_ + static_cast<std::int64_t>(*unit_.degree());
}

Residue LaurentPoly::coeff(std::int64_t e) const noexcept {
  if (is_zero() || e < offset_) return 0;
  return unit_[static_cast<std::size_t>(e - offset_)];
}

std::vector<std::pair<std::int64_t, Residue>> LaurentPoly::terms() const {
  std::vector<std::pair<std::int64_t, Residue>> out;
  const auto c = unit_.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) out.emplace_back(offset_ + static_cast<std::int64_t>(i), c[i]);
  }
  return out;
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
  if (is_zero()) return *this;
  LaurentPoly r = *this;
  r.offset_ += k;
  return r;
}

LaurentPoly LaurentPoly::scaled(Residue s) const { return LaurentPoly(unit_.scaled(s), offset_); }

LaurentPoly LaurentPoly::pow(std::uint64_t n) const {
  LaurentPoly result = constant(field(), 1);
  LaurentPoly base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::inverted_variable() const {
  if (is_zero()) return *this;
  const std::size_t len = unit_.size();
  return LaurentPoly(unit_.reversed(len), -deg());
}

LaurentPoly LaurentPoly::operator-() const { return LaurentPoly(-unit_, offset_); }

namespace {

// Brings both operands to a common offset and returns the aligned unit parts.
std::pair<Poly, Poly> align(const LaurentPoly& a, const LaurentPoly& b, std::int64_t& base) {
  if (a.is_zero()) {
    base = b.offset();
    return {Poly(b.field()), b.unit_part()};
  }
  if (b.is_zero()) {
    base = a.offset();
    return {a.unit_part(), Poly(a.field())};
  }
  base = std::min(a.offset(), b.offset());
  return {a.unit_part().shifted_up(static_cast<std::size_t>(a.offset() - base)),
          b.unit_part().shifted_up(static_cast<std::size_t>(b.offset() - base))};
}

}  // namespace

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  std::int64_t base = 0;
  auto [x, y] = align(a, b, base);
  return LaurentPoly(x + y, base);
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  std::int64_t base = 0;
  auto [x, y] = align(a, b, base);
  return LaurentPoly(x - y, base);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.field());
  return LaurentPoly(a.unit_ * b.unit_, a.offset_ + b.offset_);
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : terms()) {
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "Z";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

DegVal deg_val(const LaurentPoly& x) { return {x.deg(), x.val()}; }

}  // namespace mlca
