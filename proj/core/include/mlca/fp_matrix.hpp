#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mlca/prime_field.hpp"

namespace mlca {

// Dense matrix over F_p for the exact linear algebra behind the oracles and
// the correspondence checks (dimensions up to a few hundred).
class FpMatrix {
 public:
  FpMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  static FpMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
  std::span<const Residue> row(std::size_t i) const { return {d_.data() + i * cols_, cols_}; }
  std::vector<Residue> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Residue> v);

  bool is_zero() const noexcept;

  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  std::vector<Residue> apply(std::span<const Residue> v) const;
  FpMatrix scaled(Residue s) const;
  FpMatrix pow(std::uint64_t e) const;
  FpMatrix transpose() const;
  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

  std::size_t rank() const;
  std::size_t nullity() const { return cols_ - rank(); }
  // Basis of {v : M v = 0}, one vector per free column.
  std::vector<std::vector<Residue>> kernel_basis() const;
  // Determinant of a square matrix.
  Residue det() const;

 private:
  PrimeField field_;
  std::size_t rows_, cols_;
  std::vector<Residue> d_;
};

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(FpMatrix& m);

}  // namespace mlca
