#pragma once

// Finite-dimensional associative algebras and bimodules given by rational
// structure constants, plus the first primitives defined on them:
// products and actions, module homomorphisms, annihilators and units.

#include <modext/conditions.hpp>
#include <modext/linalg.hpp>
#include <modext/matrix.hpp>
#include <modext/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modext {

/// Dense rank-3 tensor t(i,j,k), last index fastest.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2)
      : d0_(d0), d1_(d1), d2_(d2), data_(d0 * d1 * d2, Rational(0)) {}

  std::size_t dim0() const noexcept { return d0_; }
  std::size_t dim1() const noexcept { return d1_; }
  std::size_t dim2() const noexcept { return d2_; }

  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * d1_ + j) * d2_ + k];
  }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * d1_ + j) * d2_ + k];
  }

  /// The fibre t(i,j,:).
  Vector fibre(std::size_t i, std::size_t j) const {
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>((i * d1_ + j) * d2_);
    return Vector(first, first + static_cast<std::ptrdiff_t>(d2_));
  }

  void set_fibre(std::size_t i, std::size_t j, const Vector& v) {
    if (v.size() != d2_) throw std::invalid_argument("tensor fibre length");
    for (std::size_t k = 0; k < d2_; ++k) (*this)(i, j, k) = v[k];
  }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<Rational> data_;
};

inline std::vector<std::string> default_names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

class Algebra;
struct AlgebraValidation;
AlgebraValidation validate_algebra(Tensor3 mul, std::vector<std::string> names = {});

/// An associative algebra A with basis e_0..e_{m-1} and
/// e_i e_j = sum_k mul(i,j,k) e_k. Only obtainable through validate_algebra,
/// so every value is associative.
class Algebra {
 public:
  std::size_t dim() const noexcept { return mul_.dim0(); }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }
  const Tensor3& structure() const noexcept { return mul_; }

  /// Matrix of y -> e_i y.
  const Matrix& left_mult(std::size_t i) const { return left_.at(i); }
  /// Matrix of y -> y e_i.
  const Matrix& right_mult(std::size_t i) const { return right_.at(i); }

  /// Matrix of y -> x y.
  Matrix left_mult(const Vector& x) const { return combine(left_, x); }
  /// Matrix of y -> y x.
  Matrix right_mult(const Vector& x) const { return combine(right_, x); }

  Vector mul(const Vector& x, const Vector& y) const {
    require_element(x);
    require_element(y);
    Vector out = zero_vector(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (sgn(x[i]) != 0) axpy(out, x[i], left_[i].apply(y));
    return out;
  }

  /// e_i e_j as a coordinate vector.
  Vector basis_product(std::size_t i, std::size_t j) const { return mul_.fibre(i, j); }

  void require_element(const Vector& x) const {
    if (x.size() != dim()) throw std::invalid_argument("element does not belong to the algebra");
  }

 private:
  friend AlgebraValidation validate_algebra(Tensor3, std::vector<std::string>);

  Algebra(Tensor3 mul, std::vector<std::string> names) : mul_(std::move(mul)), names_(std::move(names)) {
    const std::size_t m = mul_.dim0();
    left_.assign(m, Matrix(m, m));
    right_.assign(m, Matrix(m, m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          left_[i](k, j) = mul_(i, j, k);
          right_[j](k, i) = mul_(i, j, k);
        }
  }

  static Matrix combine(const std::vector<Matrix>& mats, const Vector& x) {
    if (x.size() != mats.size()) throw std::invalid_argument("element does not belong to the algebra");
    const std::size_t n = mats.empty() ? 0 : mats.front().rows();
    Matrix out(n, n);
    for (std::size_t i = 0; i < mats.size(); ++i)
      if (sgn(x[i]) != 0) out += x[i] * mats[i];
    return out;
  }

  Tensor3 mul_;
  std::vector<std::string> names_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

struct AlgebraValidation {
  std::optional<Algebra> algebra;
  Check associativity;
  bool valid() const noexcept { return algebra.has_value(); }
};

/// Checks (e_i e_j) e_k = e_i (e_j e_k) on every basis triple.
inline AlgebraValidation validate_algebra(Tensor3 mul, std::vector<std::string> names) {
  const std::size_t m = mul.dim0();
  if (mul.dim1() != m || mul.dim2() != m) throw std::invalid_argument("structure constants must be dim^3");
  if (names.empty()) names = default_names("e", m);
  if (names.size() != m) throw std::invalid_argument("basis_names length must equal dim");

  Algebra candidate(std::move(mul), std::move(names));
  Check assoc{.name = "associativity", .statement = "(e_i e_j) e_k = e_i (e_j e_k)"};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Vector ij = candidate.basis_product(i, j);
      for (std::size_t k = 0; k < m; ++k) {
        const Vector lhs = candidate.right_mult(k).apply(ij);
        const Vector rhs = candidate.left_mult(i).apply(candidate.basis_product(j, k));
        assoc.expect_equal({i, j, k}, lhs, rhs);
      }
    }
  AlgebraValidation out{std::nullopt, std::move(assoc)};
  if (out.associativity.passed()) out.algebra.emplace(std::move(candidate));
  return out;
}

/// validate_algebra that throws AxiomViolation instead of reporting.
inline Algebra make_algebra(Tensor3 mul, std::vector<std::string> names = {}) {
  AlgebraValidation v = validate_algebra(std::move(mul), std::move(names));
  if (!v.valid()) throw AxiomViolation(ConditionReport{{v.associativity}});
  return std::move(*v.algebra);
}

class Bimodule;
struct BimoduleValidation;
BimoduleValidation validate_bimodule(const Algebra& a, const Tensor3& left, const Tensor3& right,
                                     std::vector<std::string> names = {}, bool require_unital = false);

/// An A-bimodule U with basis u_0..u_{n-1}:
///   e_i u_j = sum_k left(i,j,k) u_k,   u_j e_i = sum_k right(j,i,k) u_k.
class Bimodule {
 public:
  std::size_t algebra_dim() const noexcept { return left_tensor_.dim0(); }
  std::size_t dim() const noexcept { return left_tensor_.dim1(); }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }
  const Tensor3& left_tensor() const noexcept { return left_tensor_; }
  const Tensor3& right_tensor() const noexcept { return right_tensor_; }

  /// Matrix of u -> e_i u.
  const Matrix& left_action(std::size_t i) const { return left_.at(i); }
  /// Matrix of u -> u e_i.
  const Matrix& right_action(std::size_t i) const { return right_.at(i); }

  Matrix left_action(const Vector& a) const { return combine(left_, a); }
  Matrix right_action(const Vector& a) const { return combine(right_, a); }

  Vector act_left(const Vector& a, const Vector& u) const {
    require_element(u);
    return left_action(a).apply(u);
  }
  Vector act_right(const Vector& u, const Vector& a) const {
    require_element(u);
    return right_action(a).apply(u);
  }

  void require_element(const Vector& u) const {
    if (u.size() != dim()) throw std::invalid_argument("element does not belong to the bimodule");
  }

  void require_over(const Algebra& a) const {
    if (a.dim() != algebra_dim()) throw std::invalid_argument("bimodule is not over this algebra");
  }

 private:
  friend BimoduleValidation validate_bimodule(const Algebra&, const Tensor3&, const Tensor3&,
                                              std::vector<std::string>, bool);

  Bimodule(Tensor3 left, Tensor3 right, std::vector<std::string> names)
      : left_tensor_(std::move(left)), right_tensor_(std::move(right)), names_(std::move(names)) {
    const std::size_t m = left_tensor_.dim0();
    const std::size_t n = left_tensor_.dim1();
    left_.assign(m, Matrix(n, n));
    right_.assign(m, Matrix(n, n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          left_[i](k, j) = left_tensor_(i, j, k);
          right_[i](k, j) = right_tensor_(j, i, k);
        }
  }

  Matrix combine(const std::vector<Matrix>& mats, const Vector& a) const {
    if (a.size() != mats.size()) throw std::invalid_argument("element does not belong to the algebra");
    Matrix out(dim(), dim());
    for (std::size_t i = 0; i < mats.size(); ++i)
      if (sgn(a[i]) != 0) out += a[i] * mats[i];
    return out;
  }

  Tensor3 left_tensor_;
  Tensor3 right_tensor_;
  std::vector<std::string> names_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

struct BimoduleValidation {
  std::optional<Bimodule> module;
  ConditionReport report;
  bool valid() const noexcept { return module.has_value(); }
};

std::optional<Vector> unit_element(const Algebra& a);

/// Checks the three compatibility axioms (ab)u = a(bu), u(ab) = (ua)b and
/// (au)b = a(ub) on basis triples. When A has a unit the unital axiom
/// e u = u e = u is evaluated too; it only rejects if `require_unital`.
inline BimoduleValidation validate_bimodule(const Algebra& a, const Tensor3& left, const Tensor3& right,
                                            std::vector<std::string> names, bool require_unital) {
  const std::size_t m = a.dim();
  const std::size_t n = left.dim1();
  if (left.dim0() != m || left.dim2() != n) throw std::invalid_argument("left action must be dimA x dimU x dimU");
  if (right.dim0() != n || right.dim1() != m || right.dim2() != n)
    throw std::invalid_argument("right action must be dimU x dimA x dimU");
  if (names.empty()) names = default_names("u", n);
  if (names.size() != n) throw std::invalid_argument("basis_names length must equal dim");

  Bimodule u(left, right, std::move(names));
  Check left_assoc{.name = "left associativity", .statement = "(ab)u = a(bu)"};
  Check right_assoc{.name = "right associativity", .statement = "u(ab) = (ua)b"};
  Check middle{.name = "bimodule compatibility", .statement = "(au)b = a(ub)"};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Vector ij = a.basis_product(i, j);
      const Matrix l_ij = u.left_action(ij);
      const Matrix r_ij = u.right_action(ij);
      for (std::size_t k = 0; k < n; ++k) {
        const Vector uk = unit_vector(n, k);
        left_assoc.expect_equal({i, j, k}, l_ij.apply(uk), u.left_action(i).apply(u.left_action(j).apply(uk)));
        right_assoc.expect_equal({i, j, k}, r_ij.apply(uk),
                                 u.right_action(j).apply(u.right_action(i).apply(uk)));
        middle.expect_equal({i, k, j}, u.right_action(j).apply(u.left_action(i).apply(uk)),
                            u.left_action(i).apply(u.right_action(j).apply(uk)));
      }
    }
  BimoduleValidation out{std::nullopt, {}};
  out.report.checks = {left_assoc, right_assoc, middle};

  if (auto e = unit_element(a)) {
    Check unital{.name = "unital", .statement = "e u = u e = u for the unit e of A"};
    unital.informational = !require_unital;
    const Matrix le = u.left_action(*e);
    const Matrix re = u.right_action(*e);
    for (std::size_t k = 0; k < n; ++k) {
      const Vector uk = unit_vector(n, k);
      unital.expect_equal({k}, le.apply(uk), uk);
      unital.expect_equal({k}, re.apply(uk), uk);
    }
    out.report.checks.push_back(std::move(unital));
  }
  if (out.report.passed()) out.module.emplace(std::move(u));
  return out;
}

inline Bimodule make_bimodule(const Algebra& a, const Tensor3& left, const Tensor3& right,
                              std::vector<std::string> names = {}, bool require_unital = false) {
  BimoduleValidation v = validate_bimodule(a, left, right, std::move(names), require_unital);
  if (!v.valid()) throw AxiomViolation(v.report);
  return std::move(*v.module);
}

/// A as a bimodule over itself.
inline Bimodule regular_bimodule(const Algebra& a) {
  const std::size_t m = a.dim();
  Tensor3 left(m, m, m), right(m, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        left(i, j, k) = a.structure()(i, j, k);
        right(j, i, k) = a.structure()(j, i, k);
      }
  return make_bimodule(a, left, right, a.basis_names());
}

/// Q^n with both actions identically zero.
inline Bimodule zero_action_bimodule(const Algebra& a, std::size_t n) {
  return make_bimodule(a, Tensor3(a.dim(), n, n), Tensor3(n, a.dim(), n));
}

/// {x in A : x u_j = u_j x = 0 for every basis vector u_j}.
inline Subspace annihilator(const Algebra& a, const Bimodule& u) {
  u.require_over(a);
  const std::size_t m = a.dim();
  const std::size_t n = u.dim();
  Matrix system(2 * n * n, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        system(j * n + k, i) = u.left_tensor()(i, j, k);
        system(n * n + j * n + k, i) = u.right_tensor()(j, i, k);
      }
  return nullspace(system);
}

enum class Side { left, right, both };

/// Checks f(a u) = a f(u) and/or f(u a) = f(u) a on basis pairs, for
/// f : source -> target given as a (target.dim x source.dim) matrix.
inline ConditionReport is_module_hom(const Algebra& a, const Bimodule& source, const Bimodule& target,
                                     const LinearMap& f, Side side = Side::both) {
  source.require_over(a);
  target.require_over(a);
  if (f.rows() != target.dim() || f.cols() != source.dim())
    throw std::invalid_argument("module map has the wrong shape");
  ConditionReport report;
  const std::size_t n = source.dim();
  if (side != Side::right) {
    Check c{.name = "left module hom", .statement = "f(a u) = a f(u)"};
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < n; ++j)
        c.expect_equal({i, j}, f.apply(source.left_action(i).column(j)), target.left_action(i).apply(f.column(j)));
    report.checks.push_back(std::move(c));
  }
  if (side != Side::left) {
    Check c{.name = "right module hom", .statement = "f(u a) = f(u) a"};
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < a.dim(); ++i)
        c.expect_equal({j, i}, f.apply(source.right_action(i).column(j)),
                       target.right_action(i).apply(f.column(j)));
    report.checks.push_back(std::move(c));
  }
  return report;
}

/// The two-sided unit of A, if there is one.
inline std::optional<Vector> unit_element(const Algebra& a) {
  const std::size_t m = a.dim();
  Matrix system(2 * m * m, m);
  Vector rhs = zero_vector(2 * m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t p = 0; p < m; ++p) {
        system(i * m + k, p) = a.structure()(p, i, k);
        system(m * m + i * m + k, p) = a.structure()(i, p, k);
      }
      if (i == k) rhs[i * m + k] = rhs[m * m + i * m + k] = 1;
    }
  return solve(system, rhs);
}

/// Exact test of p p = p, with the non-triviality flag p != 0.
struct IdempotentStatus {
  bool idempotent = false;
  bool nontrivial = false;  // p != 0
};

inline IdempotentStatus is_idempotent(const Algebra& a, const Vector& p) {
  return {a.mul(p, p) == p, !is_zero(p)};
}

}  // namespace modext
