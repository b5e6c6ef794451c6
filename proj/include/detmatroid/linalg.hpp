#pragma once

// Dense exact linear algebra over a field policy (PrimeField, RationalField).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "detmatroid/errors.hpp"
#include "detmatroid/field.hpp"

namespace detmatroid {

// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename Field>
using FieldMatrix = Matrix<typename Field::value_type>;

// Gaussian elimination to reduced row echelon form in place; returns the
// pivot columns.
template <typename Field>
std::vector<std::size_t> rref_in_place(const Field& F, FieldMatrix<Field>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && F.is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(row, piv);
    const auto inv = F.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = F.mul(a(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || F.is_zero(a(i, col))) continue;
      const auto factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) {
        a(i, j) = F.sub(a(i, j), F.mul(factor, a(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Field>
std::size_t rank(const Field& F, FieldMatrix<Field> a) {
  return rref_in_place(F, a).size();
}

template <typename Field>
typename Field::value_type determinant(const Field& F, FieldMatrix<Field> a) {
  if (a.rows() != a.cols()) throw ContractError("determinant of a non-square matrix");
  auto det = F.one();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && F.is_zero(a(piv, col))) ++piv;
    if (piv == n) return F.zero();
    if (piv != col) {
      a.swap_rows(piv, col);
      det = F.neg(det);
    }
    det = F.mul(det, a(col, col));
    const auto inv = F.inv(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (F.is_zero(a(i, col))) continue;
      const auto factor = F.mul(a(i, col), inv);
      for (std::size_t j = col; j < n; ++j) a(i, j) = F.sub(a(i, j), F.mul(factor, a(col, j)));
    }
  }
  return det;
}

// Basis of the right kernel {x : A x = 0}, as the columns of the result.
template <typename Field>
FieldMatrix<Field> kernel(const Field& F, FieldMatrix<Field> a) {
  const auto pivots = rref_in_place(F, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  FieldMatrix<Field> basis(a.cols(), free_cols.size(), F.zero());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = F.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], k) = F.neg(a(r, free_cols[k]));
    }
  }
  return basis;
}

// The unique solution of A x = b when A has full column rank and the system
// is consistent; the flags tell the two failure modes apart.
template <typename Field>
struct SolveResult {
  std::optional<std::vector<typename Field::value_type>> x;
  bool full_column_rank = false;
  bool consistent = false;
};

template <typename Field>
SolveResult<Field> solve_unique(const Field& F, const FieldMatrix<Field>& a,
                                const std::vector<typename Field::value_type>& b) {
  FieldMatrix<Field> aug(a.rows(), a.cols() + 1, F.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = rref_in_place(F, aug);
  SolveResult<Field> out;
  out.consistent = pivots.empty() || pivots.back() != a.cols();
  std::size_t coefficient_pivots = pivots.size() - (out.consistent ? 0 : 1);
  out.full_column_rank = coefficient_pivots == a.cols();
  if (out.consistent && out.full_column_rank) {
    std::vector<typename Field::value_type> x(a.cols(), F.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    out.x = std::move(x);
  }
  return out;
}

template <typename Field>
FieldMatrix<Field> multiply(const Field& F, const FieldMatrix<Field>& a,
                            const FieldMatrix<Field>& b) {
  if (a.cols() != b.rows()) throw ContractError("dimension mismatch in matrix product");
  FieldMatrix<Field> c(a.rows(), b.cols(), F.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (F.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) = F.add(c(i, j), F.mul(a(i, k), b(k, j)));
      }
    }
  }
  return c;
}

template <typename Field>
FieldMatrix<Field> transpose_matrix(const FieldMatrix<Field>& a) {
  FieldMatrix<Field> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

// Rank over GF(p) using the dispatched SIMD row kernel. Destroys `a`.
std::size_t gfp_rank_in_place(Matrix<std::uint32_t>& a, std::uint32_t p);

inline std::size_t gfp_rank(Matrix<std::uint32_t> a, std::uint32_t p) {
  return gfp_rank_in_place(a, p);
}

}  // namespace detmatroid
