#pragma once

// Exact Gauss-Jordan elimination and canonical subspaces.

#include <modext/matrix.hpp>
#include <modext/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace modext {

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row-echelon form. Zero entries are skipped during elimination,
/// which keeps the sparse Leibniz systems cheap.
inline RrefResult rref(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t k = c; k < cols; ++k) std::swap(m(p, k), m(r, k));
    const Rational inv = 1 / m(r, c);
    support.clear();
    for (std::size_t k = c; k < cols; ++k) {
      if (sgn(m(r, k)) == 0) continue;
      m(r, k) *= inv;
      support.push_back(k);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t k : support) m(i, k) -= f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult{std::move(m), pivots, r};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// A linear subspace of Q^n, stored canonically: its basis is the list of
/// nonzero rows of a reduced row-echelon matrix. Equal subspaces compare
/// equal entry-for-entry.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

  static Subspace full(std::size_t ambient) {
    return from_rows(Matrix::identity(ambient));
  }

  /// Rows of `generators` span the subspace.
  static Subspace from_rows(const Matrix& generators) {
    Subspace s(generators.cols());
    RrefResult red = rref(generators);
    s.basis_ = red.reduced.block(0, 0, red.rank, generators.cols());
    s.pivots_ = std::move(red.pivots);
    return s;
  }

  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors) {
    return from_rows(Matrix::from_rows(vectors, ambient));
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return dim() == 0; }

  /// Basis vectors as rows (reduced echelon form).
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  std::vector<Vector> vectors() const {
    std::vector<Vector> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  /// v minus its components along the basis at pivot columns; zero iff v is in the span.
  Vector reduce(Vector v) const {
    if (v.size() != ambient_) throw std::invalid_argument("subspace: ambient mismatch");
    for (std::size_t i = 0; i < dim(); ++i) {
      const Rational f = v[pivots_[i]];
      if (sgn(f) == 0) continue;
      for (std::size_t k = pivots_[i]; k < ambient_; ++k)
        if (sgn(basis_(i, k)) != 0) v[k] -= f * basis_(i, k);
    }
    return v;
  }

  bool contains(const Vector& v) const { return modext::is_zero(reduce(v)); }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("subspace: ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v with respect to basis(); v must lie in the subspace.
  Vector coordinates(const Vector& v) const {
    if (!contains(v)) throw std::invalid_argument("subspace: vector not contained");
    Vector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  /// Inverse of coordinates().
  Vector combine(const Vector& coords) const {
    if (coords.size() != dim()) throw std::invalid_argument("subspace: coordinate length");
    Vector v = zero_vector(ambient_);
    for (std::size_t i = 0; i < dim(); ++i) axpy(v, coords[i], basis_.row(i));
    return v;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical basis of {x : m x = 0}.
inline Subspace nullspace(const Matrix& m) {
  const RrefResult red = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(n);
    v[f] = 1;
    for (std::size_t i = 0; i < red.rank; ++i) v[red.pivots[i]] = -red.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

inline Subspace column_space(const Matrix& m) { return Subspace::from_rows(m.transpose()); }

inline Subspace row_space(const Matrix& m) { return Subspace::from_rows(m); }

/// Some x with m x = b, free variables set to zero; nullopt if inconsistent.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length");
  Matrix aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  aug.set_column(m.cols(), b);
  const RrefResult red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
  Vector x = zero_vector(m.cols());
  for (std::size_t i = 0; i < red.rank; ++i) x[red.pivots[i]] = red.reduced(i, m.cols());
  return x;
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("subspace sum: ambient mismatch");
  return Subspace::from_rows(vstack(a.basis(), b.basis()));
}

/// Intersection via the kernel of [A^T | -B^T].
inline Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("subspace intersection: ambient mismatch");
  const std::size_t n = a.ambient_dim();
  const Matrix stacked = hstack(a.basis().transpose(), (Rational(-1) * b.basis()).transpose());
  const Subspace kernel = nullspace(stacked);
  std::vector<Vector> gens;
  for (const Vector& k : kernel.vectors()) {
    Vector y(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    gens.push_back(a.basis().transpose().apply(y));
  }
  return Subspace::span(n, gens);
}

struct SubspaceOps {
  Subspace sum;
  Subspace intersection;
  bool contains = false;  // a contains b
  bool equal = false;
};

inline SubspaceOps subspace_ops(const Subspace& a, const Subspace& b) {
  return SubspaceOps{sum(a, b), intersection(a, b), a.contains(b), a == b};
}

}  // namespace modext
