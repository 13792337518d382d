#pragma once

#include "heis/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heis {

/// Small dense matrix over an exact or floating scalar. Everything the
/// embedded-matrix oracles need and nothing more; sizes stay at (2n+2) or so.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static Matrix identity(std::size_t m) {
    Matrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) out(i, i) = S(1);
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows_, b.cols_);
    const S zero(0);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& left = a(i, k);
        if (left == zero) continue;  // the embedded matrices are sparse
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const S& right = b(k, j);
          if (right == zero) continue;
          out(i, j) += left * right;
        }
      }
    return out;
  }

  /// tr(a b) without forming the product.
  static S trace_product(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || a.rows_ != b.cols_)
      throw std::invalid_argument("matrix shape mismatch");
    S acc(0);
    const S zero(0);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == zero) continue;
        acc += a(i, k) * b(k, i);
      }
    return acc;
  }

  friend Matrix operator*(const S& c, const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = c * a.data_[i];
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const S& v) { return v == S(0); });
  }

  Matrix pow(unsigned k) const {
    require_square();
    Matrix out = identity(rows_);
    for (unsigned i = 0; i < k; ++i) out = out * (*this);
    return out;
  }

  /// Largest entry magnitude, as a double.
  double max_abs() const {
    double m = 0.0;
    for (const S& v : data_)
      m = std::max(m, scalar_traits<S>::to_double(scalar_traits<S>::abs(v)));
    return m;
  }

  static double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).max_abs();
  }

  /// Gaussian elimination with exact division (partial pivoting keeps the
  /// float instantiation usable too).
  S determinant() const {
    require_square();
    Matrix work = *this;
    const std::size_t m = rows_;
    S det(1);
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col; r < m; ++r)
        if (scalar_traits<S>::abs(work(r, col)) >
            scalar_traits<S>::abs(work(pivot, col)))
          pivot = r;
      if (work(pivot, col) == S(0)) return S(0);
      if (pivot != col) {
        work.swap_rows(pivot, col);
        det = S(0) - det;
      }
      det = det * work(col, col);
      for (std::size_t r = col + 1; r < m; ++r) {
        S factor = work(r, col) / work(col, col);
        for (std::size_t c = col; c < m; ++c)
          work(r, c) -= factor * work(col, c);
      }
    }
    return det;
  }

  Matrix inverse() const {
    require_square();
    const std::size_t m = rows_;
    Matrix work = *this;
    Matrix out = identity(m);
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col; r < m; ++r)
        if (scalar_traits<S>::abs(work(r, col)) >
            scalar_traits<S>::abs(work(pivot, col)))
          pivot = r;
      if (work(pivot, col) == S(0))
        throw std::invalid_argument("matrix is singular");
      work.swap_rows(pivot, col);
      out.swap_rows(pivot, col);
      const S lead = work(col, col);
      for (std::size_t c = 0; c < m; ++c) {
        work(col, c) /= lead;
        out(col, c) /= lead;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || work(r, col) == S(0)) continue;
        const S factor = work(r, col);
        for (std::size_t c = 0; c < m; ++c) {
          work(r, c) -= factor * work(col, c);
          out(r, c) -= factor * out(col, c);
        }
      }
    }
    return out;
  }

  /// Row-echelon rank; entries with magnitude <= tol count as zero.
  std::size_t rank(const S& tol = S(0)) const {
    Matrix work = *this;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
      std::size_t pivot = r;
      for (std::size_t i = r; i < rows_; ++i)
        if (scalar_traits<S>::abs(work(i, col)) >
            scalar_traits<S>::abs(work(pivot, col)))
          pivot = i;
      if (!(scalar_traits<S>::abs(work(pivot, col)) > tol)) continue;
      work.swap_rows(pivot, r);
      for (std::size_t i = r + 1; i < rows_; ++i) {
        S factor = work(i, col) / work(r, col);
        for (std::size_t c = col; c < cols_; ++c)
          work(i, c) -= factor * work(r, c);
      }
      ++r;
    }
    return r;
  }

  S trace() const {
    require_square();
    S acc(0);
    for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, i);
    return acc;
  }

 private:
  void require_square() const {
    if (rows_ != cols_) throw std::invalid_argument("matrix is not square");
  }
  void require_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(a, c), (*this)(b, c));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

}  // namespace heis
