#pragma once

#include <modext/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modext {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Rows must share a common length; `cols` is used when `rows` is empty.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows = 0) {
    return from_rows(cols, rows).transpose();
  }

  /// Inverse of flatten(): reshapes a row-major coordinate vector.
  static Matrix unflatten(std::size_t rows, std::size_t cols, const Vector& v) {
    if (v.size() != rows * cols) throw std::invalid_argument("unflatten: size mismatch");
    Matrix m(rows, cols);
    m.entries_ = v;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  Rational& at(std::size_t r, std::size_t c) {
    check_index(r, c);
    return (*this)(r, c);
  }
  const Rational& at(std::size_t r, std::size_t c) const {
    check_index(r, c);
    return (*this)(r, c);
  }

  Vector row(std::size_t r) const {
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  const Vector& flatten() const noexcept { return entries_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      throw std::out_of_range("set_block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  /// this * x
  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: shape mismatch");
    Vector y = zero_vector(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(x[c]) == 0) continue;
      for (std::size_t r = 0; r < rows_; ++r)
        if (sgn((*this)(r, c)) != 0) y[r] += (*this)(r, c) * x[c];
    }
    return y;
  }

  bool is_zero() const { return modext::is_zero(entries_); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] + b.entries_[i];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
    return r;
  }

  friend Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.entries_) x *= s;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  Matrix& operator+=(const Matrix& b) { return *this = *this + b; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r) s += ", ";
      s += modext::to_string(row(r));
    }
    return s + "]";
  }

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  }
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Linear maps between coordinate spaces are stored as (target dim x source dim) matrices.
using LinearMap = Matrix;

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

}  // namespace modext
