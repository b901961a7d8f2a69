#pragma once

// Derivations D : A -> U, i.e. linear maps with D(ab) = a D(b) + D(a) b,
// computed as the kernel of the Leibniz linear system; inner derivations
// a -> a x - x a; and dim H^1 = dim Der - dim Inn.

#include <modext/algebra.hpp>
#include <modext/conditions.hpp>
#include <modext/linalg.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace modext {

/// Rows indexed (i,j,k) lexicographically: the k-th coordinate of
/// D(e_i e_j) - e_i D(e_j) - D(e_i) e_j. Columns are the entries of D's
/// (dim U x dim A) matrix in row-major order.
struct LeibnizSystem {
  std::size_t algebra_dim = 0;
  std::size_t module_dim = 0;
  Matrix matrix;
};

inline LeibnizSystem leibniz_system(const Algebra& a, const Bimodule& u) {
  u.require_over(a);
  const std::size_t m = a.dim();
  const std::size_t n = u.dim();
  Matrix sys(m * m * n, n * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t row = (i * m + j) * n + k;
        for (std::size_t l = 0; l < m; ++l) sys(row, k * m + l) += a.structure()(i, j, l);
        for (std::size_t p = 0; p < n; ++p) {
          sys(row, p * m + j) -= u.left_tensor()(i, p, k);
          sys(row, p * m + i) -= u.right_tensor()(p, j, k);
        }
      }
  return LeibnizSystem{m, n, std::move(sys)};
}

inline void require_map_shape(const LinearMap& f, std::size_t target, std::size_t source) {
  if (f.rows() != target || f.cols() != source) throw std::invalid_argument("linear map has the wrong shape");
}

/// Evaluates the Leibniz identity on every basis pair (e_i, e_j).
inline ConditionReport is_derivation(const Algebra& a, const Bimodule& u, const LinearMap& f) {
  u.require_over(a);
  require_map_shape(f, u.dim(), a.dim());
  Check c{.name = "Leibniz rule", .statement = "D(e_i e_j) = e_i D(e_j) + D(e_i) e_j"};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vector lhs = f.apply(a.basis_product(i, j));
      const Vector rhs = u.left_action(i).apply(f.column(j)) + u.right_action(j).apply(f.column(i));
      c.expect_equal({i, j}, lhs, rhs);
    }
  return ConditionReport{{std::move(c)}};
}

/// Derivations on A itself.
inline ConditionReport is_derivation(const Algebra& a, const LinearMap& f) {
  return is_derivation(a, regular_bimodule(a), f);
}

struct DerivationSpace {
  LeibnizSystem system;
  Subspace space;                // kernel of the system, in flattened-matrix coordinates
  std::vector<LinearMap> basis;  // space's canonical basis reshaped to matrices
  std::size_t dim() const noexcept { return basis.size(); }
};

inline DerivationSpace derivation_space(const Algebra& a, const Bimodule& u) {
  LeibnizSystem sys = leibniz_system(a, u);
  Subspace kernel = nullspace(sys.matrix);
  std::vector<LinearMap> basis;
  for (const Vector& v : kernel.vectors()) {
    LinearMap d = Matrix::unflatten(u.dim(), a.dim(), v);
    if (!is_derivation(a, u, d).passed())
      throw std::logic_error("derivation_space: kernel element fails the Leibniz rule");
    basis.push_back(std::move(d));
  }
  return DerivationSpace{std::move(sys), std::move(kernel), std::move(basis)};
}

/// The inner derivation a -> a x - x a.
inline LinearMap inner_derivation(const Algebra& a, const Bimodule& u, const Vector& x) {
  u.require_over(a);
  u.require_element(x);
  LinearMap d(u.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    d.set_column(i, u.left_action(i).apply(x) - u.right_action(i).apply(x));
  return d;
}

/// Matrix of the linear map U -> Hom(A,U), x -> inner_derivation(x), with
/// flattened matrices as columns.
inline Matrix inner_map_matrix(const Algebra& a, const Bimodule& u) {
  Matrix out(u.dim() * a.dim(), u.dim());
  for (std::size_t j = 0; j < u.dim(); ++j)
    out.set_column(j, inner_derivation(a, u, unit_vector(u.dim(), j)).flatten());
  return out;
}

inline Subspace inner_space(const Algebra& a, const Bimodule& u) {
  return column_space(inner_map_matrix(a, u));
}

struct CohomologySummary {
  std::size_t der = 0;
  std::size_t inn = 0;
  std::size_t h1() const noexcept { return der - inn; }
};

inline CohomologySummary cohomology_summary(const Algebra& a, const Bimodule& u) {
  const DerivationSpace der = derivation_space(a, u);
  const Subspace inn = inner_space(a, u);
  if (!der.space.contains(inn)) throw std::logic_error("inner derivations escape the derivation space");
  return CohomologySummary{der.dim(), inn.dim()};
}

inline std::size_t h1_dimension(const Algebra& a, const Bimodule& u) { return cohomology_summary(a, u).h1(); }

}  // namespace modext
