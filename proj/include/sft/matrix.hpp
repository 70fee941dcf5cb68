#pragma once

#include "sft/error.hpp"
#include "sft/kernels.hpp"
#include "sft/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sft {

/// Dense row-major matrix over a commutative ring `T`.
///
/// `T` must be constructible from `int` (0 and 1 are the ring identities) and
/// support `+`, `-`, `*` and `==`. Instantiated for Integer (IntMatrix),
/// Rational (RatMatrix) and IntPoly (PolyMatrix).
template <class T> class Matrix {
public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionError("matrix entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
      if (r.size() != cols_)
        throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const T &at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw DimensionError("matrix index out of range");
    return (*this)(i, j);
  }

  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const T> entries() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  /// Submatrix on the given row and column index lists.
  Matrix select(std::span<const std::size_t> row_idx,
                std::span<const std::size_t> col_idx) const {
    Matrix s(row_idx.size(), col_idx.size());
    for (std::size_t a = 0; a < row_idx.size(); ++a)
      for (std::size_t b = 0; b < col_idx.size(); ++b)
        s(a, b) = at(row_idx[a], col_idx[b]);
    return s;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
      throw DimensionError("block out of range");
    Matrix s(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        s(i, j) = (*this)(r0 + i, c0 + j);
    return s;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw DimensionError("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix &operator+=(const Matrix &o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k)
      data_[k] += o.data_[k];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k)
      data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto &x : a.data_)
      x = T(0) - x;
    return a;
  }
  friend Matrix operator*(const T &s, Matrix a) {
    for (auto &x : a.data_)
      x = s * x;
    return a;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw DimensionError("product dimensions disagree: " +
                           a.shape_string() + " * " + b.shape_string());
    Matrix c(a.rows_, b.cols_);
    kernels::multiply(a.data_.data(), b.data_.data(), c.data_.data(), a.rows_,
                      a.cols_, b.cols_);
    return c;
  }

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

private:
  void require_same_shape(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError("shape mismatch: " + shape_string() + " vs " +
                           o.shape_string());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T> Matrix<T> power(const Matrix<T> &a, unsigned long k) {
  if (!a.square())
    throw DimensionError("power of a non-square matrix");
  Matrix<T> result = Matrix<T>::identity(a.rows());
  Matrix<T> base = a;
  while (k) {
    if (k & 1UL)
      result = result * base;
    k >>= 1;
    if (k)
      base = base * base;
  }
  return result;
}

template <class T> T trace(const Matrix<T> &a) {
  if (!a.square())
    throw DimensionError("trace of a non-square matrix");
  T t(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    t += a(i, i);
  return t;
}

/// Block diagonal a ⊕ b.
template <class T> Matrix<T> direct_sum(const Matrix<T> &a, const Matrix<T> &b) {
  Matrix<T> s(a.rows() + b.rows(), a.cols() + b.cols());
  s.set_block(0, 0, a);
  s.set_block(a.rows(), a.cols(), b);
  return s;
}

template <class T> bool is_zero(const Matrix<T> &a) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [](const T &x) { return x == T(0); });
}

inline bool is_nonnegative(const IntMatrix &a) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [](const Integer &x) { return sgn(x) >= 0; });
}

inline bool is_positive(const IntMatrix &a) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [](const Integer &x) { return sgn(x) > 0; });
}

inline RatMatrix to_rational(const IntMatrix &a) {
  std::vector<Rational> e(a.entries().begin(), a.entries().end());
  return RatMatrix(a.rows(), a.cols(), std::move(e));
}

/// Integer matrix with the same entries; throws NotRealizableError when any
/// entry has a nontrivial denominator.
inline IntMatrix to_integer(const RatMatrix &a) {
  std::vector<Integer> e;
  e.reserve(a.entries().size());
  for (const auto &q : a.entries()) {
    if (!is_integral(q))
      throw NotRealizableError("matrix entry " + q.get_str() +
                               " is not an integer");
    e.push_back(q.get_num());
  }
  return IntMatrix(a.rows(), a.cols(), std::move(e));
}

inline IntMatrix int_matrix(std::size_t rows, std::size_t cols,
                            std::initializer_list<long> entries) {
  std::vector<Integer> e;
  for (long v : entries)
    e.emplace_back(v);
  return IntMatrix(rows, cols, std::move(e));
}

template <class T>
std::ostream &operator<<(std::ostream &os, const Matrix<T> &m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

} // namespace sft
