#pragma once

// Dense linear algebra over a field-like scalar type S.
//
// S must provide + - * / and unary minus.  ScalarTraits<S> supplies zero/one
// of the same field as a sample element, a zero test and, for inexact
// scalars, a magnitude used for partial pivoting.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "grasslog/exact_fields.hpp"

namespace grasslog {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
  static constexpr bool exact = true;
  static ExactScalar zero_like(const ExactScalar& s) { return ExactScalar::zero(s.field()); }
  static ExactScalar one_like(const ExactScalar& s) { return ExactScalar::one(s.field()); }
  static bool is_zero(const ExactScalar& s) { return s.is_zero(); }
  static double magnitude(const ExactScalar& s) { return s.is_zero() ? 0.0 : 1.0; }
};

class SingularMatrix : public std::domain_error {
 public:
  SingularMatrix() : std::domain_error("singular matrix") {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class S>
using Vector = std::vector<S>;

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const S& like) {
    Matrix m(n, n, ScalarTraits<S>::zero_like(like));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one_like(like);
    return m;
  }

  /// Matrix whose j-th column is columns[j].
  static Matrix from_columns(std::span<const Vector<S>> columns) {
    if (columns.empty()) throw DimensionMismatch("from_columns: no columns");
    const std::size_t r = columns.front().size();
    Matrix m(r, columns.size(), columns.front().front());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != r) throw DimensionMismatch("from_columns: ragged columns");
      for (std::size_t i = 0; i < r; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix from_rows(std::span<const Vector<S>> rows) {
    if (rows.empty()) throw DimensionMismatch("from_rows: no rows");
    const std::size_t c = rows.front().size();
    Matrix m(rows.size(), c, rows.front().front());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("from_rows: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<S> column(std::size_t j) const {
    Vector<S> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_, ScalarTraits<S>::zero_like(a.data_.front()));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
    return c;
  }

  friend Vector<S> operator*(const Matrix& a, const Vector<S>& x) {
    if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector product: size mismatch");
    Vector<S> y(a.rows_, ScalarTraits<S>::zero_like(a.data_.front()));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) y[i] = y[i] + a(i, k) * x[k];
    return y;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

namespace detail {

// Row index of the pivot in column `col` at or below `from`, or rows() if
// the column is zero there.
template <class S>
std::size_t choose_pivot(const Matrix<S>& a, std::size_t col, std::size_t from) {
  using T = ScalarTraits<S>;
  std::size_t best = a.rows();
  double best_mag = 0.0;
  for (std::size_t r = from; r < a.rows(); ++r) {
    if (T::is_zero(a(r, col))) continue;
    if constexpr (T::exact) return r;
    double mag = T::magnitude(a(r, col));
    if (best == a.rows() || mag > best_mag) {
      best = r;
      best_mag = mag;
    }
  }
  return best;
}

template <class S>
void swap_rows(Matrix<S>& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

}  // namespace detail

template <class S>
S det(Matrix<S> a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("det: matrix not square");
  using T = ScalarTraits<S>;
  const std::size_t n = a.rows();
  S result = T::one_like(a(0, 0));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = detail::choose_pivot(a, c, c);
    if (p == n) return T::zero_like(a(0, 0));
    if (p != c) {
      detail::swap_rows(a, p, c);
      result = -result;
    }
    result = result * a(c, c);
    const S inv = T::one_like(a(c, c)) / a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (T::is_zero(a(r, c))) continue;
      const S factor = a(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(r, j) = a(r, j) - factor * a(c, j);
    }
  }
  return result;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class S>
std::vector<std::size_t> row_reduce(Matrix<S>& a) {
  using T = ScalarTraits<S>;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = detail::choose_pivot(a, c, row);
    if (p == a.rows()) continue;
    detail::swap_rows(a, p, row);
    const S inv = T::one_like(a(row, c)) / a(row, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || T::is_zero(a(r, c))) continue;
      const S factor = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) - factor * a(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class S>
std::size_t rank(Matrix<S> a) {
  return row_reduce(a).size();
}

/// Unique x with a*x = b.
template <class S>
Vector<S> solve(const Matrix<S>& a, const Vector<S>& b) {
  if (a.rows() != a.cols()) throw DimensionMismatch("solve: matrix not square");
  if (a.rows() != b.size()) throw DimensionMismatch("solve: right-hand side size mismatch");
  const std::size_t n = a.rows();
  Matrix<S> aug(n, n + 1, a(0, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots.back() >= n) throw SingularMatrix();
  return aug.column(n);
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse: matrix not square");
  const std::size_t n = a.rows();
  Matrix<S> aug(n, 2 * n, ScalarTraits<S>::zero_like(a(0, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = ScalarTraits<S>::one_like(a(0, 0));
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots.back() >= n) throw SingularMatrix();
  Matrix<S> inv(n, n, a(0, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Basis of the right kernel {x : a*x = 0}, one vector per free column,
/// with that free coordinate set to 1.
template <class S>
std::vector<Vector<S>> nullspace(Matrix<S> a) {
  using T = ScalarTraits<S>;
  auto pivots = row_reduce(a);
  std::vector<Vector<S>> basis;
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<S> x(a.cols(), T::zero_like(a(0, 0)));
    x[free] = T::one_like(a(0, 0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace grasslog
