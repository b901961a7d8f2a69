#pragma once

// Structure constants for standard small algebras and bimodules.

#include <modext/algebra.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modext::catalog {

/// M_n(Q) on the matrix units E_ij, ordered row-major.
inline Algebra matrix_algebra(std::size_t n) {
  const std::size_t m = n * n;
  Tensor3 c(m, m, m);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      for (std::size_t l = 0; l < n; ++l) c(i * n + j, j * n + l, i * n + l) = 1;
    }
  return make_algebra(std::move(c), std::move(names));
}

/// Upper-triangular n x n matrices on the units E_ij, i <= j.
inline Algebra upper_triangular(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> units;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      units.emplace_back(i, j);
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  const std::size_t m = units.size();
  Tensor3 c(m, m, m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      if (units[p].second != units[q].first) continue;
      for (std::size_t r = 0; r < m; ++r)
        if (units[r].first == units[p].first && units[r].second == units[q].second) c(p, q, r) = 1;
    }
  return make_algebra(std::move(c), std::move(names));
}

/// Q[x]/(f) for monic f = x^d + coeffs[d-1] x^{d-1} + ... + coeffs[0], basis 1, x, ..., x^{d-1}.
inline Algebra polynomial_quotient(const Vector& coeffs, const std::string& var = "x") {
  const std::size_t d = coeffs.size();
  if (d == 0) throw std::invalid_argument("polynomial_quotient: degree must be positive");
  // powers[k] = coordinates of x^k reduced mod f, k < 2d - 1
  std::vector<Vector> powers;
  for (std::size_t k = 0; k < d; ++k) powers.push_back(unit_vector(d, k));
  for (std::size_t k = d; k + 1 < 2 * d; ++k) {
    const Vector& prev = powers.back();
    Vector next = zero_vector(d);
    for (std::size_t i = 0; i + 1 < d; ++i) next[i + 1] = prev[i];
    axpy(next, -prev[d - 1], coeffs);
    powers.push_back(std::move(next));
  }
  Tensor3 c(d, d, d);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) {
    names.push_back(i == 0 ? "1" : (i == 1 ? var : var + "^" + std::to_string(i)));
    for (std::size_t j = 0; j < d; ++j) c.set_fibre(i, j, powers[i + j]);
  }
  return make_algebra(std::move(c), std::move(names));
}

/// Q[eps]/(eps^2) on the basis 1, eps.
inline Algebra dual_numbers() {
  Tensor3 c(2, 2, 2);
  c(0, 0, 0) = 1;
  c(0, 1, 1) = 1;
  c(1, 0, 1) = 1;
  return make_algebra(std::move(c), {"1", "eps"});
}

/// Q^n with every product zero.
inline Algebra zero_product(std::size_t n) { return make_algebra(Tensor3(n, n, n)); }

/// Q^n with coordinatewise product.
inline Algebra diagonal(std::size_t n) {
  Tensor3 c(n, n, n);
  for (std::size_t i = 0; i < n; ++i) c(i, i, i) = 1;
  return make_algebra(std::move(c), default_names("d", n));
}

/// A x B with componentwise product; basis of A followed by basis of B.
inline Algebra direct_sum(const Algebra& a, const Algebra& b) {
  const std::size_t m = a.dim(), n = b.dim();
  Tensor3 c(m + n, m + n, m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) c(i, j, k) = a.structure()(i, j, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c(m + i, m + j, m + k) = b.structure()(i, j, k);
  std::vector<std::string> names;
  for (const auto& s : a.basis_names()) names.push_back(s + "'");
  for (const auto& s : b.basis_names()) names.push_back(s + "''");
  return make_algebra(std::move(c), std::move(names));
}

/// Column vectors Q^n over M_n(Q): left action is matrix-vector, right action zero.
inline Bimodule column_module(const Algebra& mn, std::size_t n) {
  if (mn.dim() != n * n) throw std::invalid_argument("column_module: algebra must be M_n");
  Tensor3 left(n * n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) left(i * n + j, j, i) = 1;
  return make_bimodule(mn, left, Tensor3(n, n * n, n));
}

/// Restriction of scalars: a B-bimodule U viewed over A through an algebra
/// homomorphism pi : A -> B, so a.u = pi(a) u and u.a = u pi(a).
inline Bimodule restrict_scalars(const Algebra& a, const Algebra& b, const LinearMap& pi, const Bimodule& u) {
  u.require_over(b);
  if (pi.rows() != b.dim() || pi.cols() != a.dim()) throw std::invalid_argument("restrict_scalars: shape");
  const std::size_t n = u.dim();
  Tensor3 left(a.dim(), n, n), right(n, a.dim(), n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Vector image = pi.column(i);
    const Matrix l = u.left_action(image);
    const Matrix r = u.right_action(image);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        left(i, j, k) = l(k, j);
        right(j, i, k) = r(k, j);
      }
  }
  return make_bimodule(a, left, right, u.basis_names());
}

}  // namespace modext::catalog
