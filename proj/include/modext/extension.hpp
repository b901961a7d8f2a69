#pragma once

// Module extensions T(A,U) = A (+) U with (a,u)(b,v) = (ab, av + ub),
// coordinate l1 norms, ideals and quotients A/I.

#include <modext/algebra.hpp>
#include <modext/conditions.hpp>
#include <modext/linalg.hpp>

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modext {

/// T(A,U) together with the canonical inclusions and projections.
/// Coordinates on T are the A coordinates followed by the U coordinates,
/// so the coordinate l1 norm of (a,u) is ||a||_1 + ||u||_1.
struct ModuleExtension {
  Algebra base;
  Bimodule module;
  Algebra total;
  LinearMap embed_a;    // A -> T
  LinearMap embed_u;    // U -> T
  LinearMap project_a;  // T -> A
  LinearMap project_u;  // T -> U

  std::size_t base_dim() const noexcept { return base.dim(); }
  std::size_t module_dim() const noexcept { return module.dim(); }
  std::size_t dim() const noexcept { return total.dim(); }

  Vector pair(const Vector& a, const Vector& u) const {
    base.require_element(a);
    module.require_element(u);
    Vector t = a;
    t.insert(t.end(), u.begin(), u.end());
    return t;
  }
};

inline ModuleExtension trivial_extension(const Algebra& a, const Bimodule& u) {
  u.require_over(a);
  const std::size_t m = a.dim();
  const std::size_t n = u.dim();
  Tensor3 c(m + n, m + n, m + n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) c(i, j, k) = a.structure()(i, j, k);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        c(i, m + j, m + k) = u.left_tensor()(i, j, k);
        c(m + j, i, m + k) = u.right_tensor()(j, i, k);
      }
  }

  std::vector<std::string> names = a.basis_names();
  const std::set<std::string> taken(names.begin(), names.end());
  for (const auto& s : u.basis_names()) names.push_back(taken.count(s) ? s + "'" : s);

  AlgebraValidation v = validate_algebra(std::move(c), std::move(names));
  if (!v.valid()) throw std::logic_error("trivial_extension: total algebra failed associativity");

  LinearMap embed_a(m + n, m), embed_u(m + n, n), project_a(m, m + n), project_u(n, m + n);
  for (std::size_t i = 0; i < m; ++i) embed_a(i, i) = project_a(i, i) = 1;
  for (std::size_t j = 0; j < n; ++j) embed_u(m + j, j) = project_u(j, m + j) = 1;
  return ModuleExtension{a, u, std::move(*v.algebra), embed_a, embed_u, project_a, project_u};
}

/// Least C with ||xy||_1 <= C ||x||_1 ||y||_1 for all x, y: the largest l1
/// norm of a basis product e_i e_j.
inline Rational submultiplicativity_constant(const Algebra& a) {
  Rational best = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) best = std::max(best, l1_norm(a.basis_product(i, j)));
  return best;
}

/// A s and s A contained in s, tested on basis generators.
inline ConditionReport ideal_check(const Algebra& a, const Subspace& s) {
  if (s.ambient_dim() != a.dim()) throw std::invalid_argument("ideal_check: ambient mismatch");
  Check left{.name = "left ideal", .statement = "e_i s lies in s"};
  Check right{.name = "right ideal", .statement = "s e_i lies in s"};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t g = 0; g < s.dim(); ++g) {
      const Vector gen = s.basis().row(g);
      const Vector l = a.left_mult(i).apply(gen);
      const Vector r = a.right_mult(i).apply(gen);
      const Vector l_res = s.reduce(l);
      const Vector r_res = s.reduce(r);
      left.record(is_zero(l_res), {i, g}, l, l - l_res);
      right.record(is_zero(r_res), {g, i}, r, r - r_res);
    }
  left.note = right.note = "indices (basis element, generator of s); rhs is the part of lhs lying in s";
  return ConditionReport{{left, right}};
}

/// Coordinates on A/I: the standard basis vectors at the non-pivot columns
/// of I's echelon basis represent the cosets.
struct QuotientCoordinates {
  Subspace ideal;
  std::vector<std::size_t> complement;  // indices of representative basis vectors of A
  LinearMap projection;                 // A -> A/I
  LinearMap section;                    // A/I -> A, coset -> representative
};

inline QuotientCoordinates quotient_coordinates(std::size_t dim, const Subspace& ideal) {
  if (ideal.ambient_dim() != dim) throw std::invalid_argument("quotient: ambient mismatch");
  std::vector<bool> pivot(dim, false);
  for (auto p : ideal.pivots()) pivot[p] = true;
  std::vector<std::size_t> complement;
  for (std::size_t c = 0; c < dim; ++c)
    if (!pivot[c]) complement.push_back(c);
  const std::size_t q = complement.size();
  LinearMap projection(q, dim), section(dim, q);
  for (std::size_t c = 0; c < dim; ++c) {
    const Vector r = ideal.reduce(unit_vector(dim, c));
    for (std::size_t p = 0; p < q; ++p) projection(p, c) = r[complement[p]];
  }
  for (std::size_t p = 0; p < q; ++p) section(complement[p], p) = 1;
  return QuotientCoordinates{ideal, std::move(complement), std::move(projection), std::move(section)};
}

struct QuotientBimodule {
  Bimodule module;
  QuotientCoordinates coords;
  const LinearMap& projection() const noexcept { return coords.projection; }
};

inline void require_ideal(const Algebra& a, const Subspace& i) {
  const ConditionReport r = ideal_check(a, i);
  if (const Check* bad = r.first_failure()) throw HypothesisError("I is a two-sided ideal", *bad);
}

/// A/I as an A-bimodule with the induced actions.
inline QuotientBimodule quotient_bimodule(const Algebra& a, const Subspace& ideal) {
  require_ideal(a, ideal);
  QuotientCoordinates qc = quotient_coordinates(a.dim(), ideal);
  const std::size_t m = a.dim();
  const std::size_t q = qc.complement.size();
  Tensor3 left(m, q, q), right(q, m, q);
  std::vector<std::string> names;
  for (std::size_t p = 0; p < q; ++p) {
    names.push_back("[" + a.basis_names()[qc.complement[p]] + "]");
    for (std::size_t i = 0; i < m; ++i) {
      left.set_fibre(i, p, qc.projection.apply(a.basis_product(i, qc.complement[p])));
      const Vector r = qc.projection.apply(a.basis_product(qc.complement[p], i));
      for (std::size_t k = 0; k < q; ++k) right(p, i, k) = r[k];
    }
  }
  BimoduleValidation v = validate_bimodule(a, left, right, std::move(names));
  if (!v.valid()) throw std::logic_error("quotient_bimodule: induced actions failed the bimodule axioms");
  return QuotientBimodule{std::move(*v.module), std::move(qc)};
}

/// A/I as an algebra, on the same coset coordinates as quotient_bimodule.
inline Algebra quotient_algebra(const Algebra& a, const Subspace& ideal) {
  require_ideal(a, ideal);
  const QuotientCoordinates qc = quotient_coordinates(a.dim(), ideal);
  const std::size_t q = qc.complement.size();
  Tensor3 c(q, q, q);
  std::vector<std::string> names;
  for (std::size_t p = 0; p < q; ++p) {
    names.push_back("[" + a.basis_names()[qc.complement[p]] + "]");
    for (std::size_t r = 0; r < q; ++r)
      c.set_fibre(p, r, qc.projection.apply(a.basis_product(qc.complement[p], qc.complement[r])));
  }
  AlgebraValidation v = validate_algebra(std::move(c), std::move(names));
  if (!v.valid()) throw std::logic_error("quotient_algebra: induced product is not associative");
  return std::move(*v.algebra);
}

}  // namespace modext
