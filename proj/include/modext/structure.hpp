#pragma once

// Structural predicates on finite-dimensional algebras over Q: center,
// Jacobson radical (trace form), minimal polynomials, simplicity and
// primeness, and a search for surjective left module homomorphisms A -> U.

#include <modext/algebra.hpp>
#include <modext/extension.hpp>
#include <modext/linalg.hpp>
#include <modext/polynomial.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace modext {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// {z : z e_i = e_i z for all i}.
inline Subspace center(const Algebra& a) {
  const std::size_t m = a.dim();
  Matrix sys(m * m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t p = 0; p < m; ++p)
        sys(i * m + k, p) = a.structure()(p, i, k) - a.structure()(i, p, k);
  return nullspace(sys);
}

inline Rational trace(const Matrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

struct RadicalReport {
  Subspace radical;
  bool is_semisimple = false;
  std::string method;
};

/// Jacobson radical over a field of characteristic zero:
///   rad A = {x : tr L_{xy} = 0 for every y},
/// with L the left regular representation. For non-unital A the criterion is
/// applied in the unitization A + Q1, which adds the condition tr L_x = 0
/// (y = 1); left multiplication by x in A + Q1 has the same trace as in A.
inline RadicalReport radical(const Algebra& a) {
  const std::size_t m = a.dim();
  const bool unital = unit_element(a).has_value();
  std::vector<Rational> trace_of_basis(m);
  for (std::size_t l = 0; l < m; ++l) trace_of_basis[l] = trace(a.left_mult(l));
  const std::size_t cols = unital ? m : m + 1;
  // form(i, j) = tr L_{e_i y_j} with y_j running over a basis of A (or A + Q1)
  Matrix form(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) form(i, j) = dot(a.basis_product(i, j), trace_of_basis);
    if (!unital) form(i, m) = trace_of_basis[i];
  }
  RadicalReport r{nullspace(form.transpose()), false,
                  unital ? "trace form tr(L_xy) on A (unital)" : "trace form tr(L_xy) on the unitization A + Q1"};
  r.is_semisimple = r.radical.is_zero();
  return r;
}

/// Monic polynomial of least degree annihilating x. Powers are taken in A
/// when A is unital, otherwise in the unitization A + Q1.
inline Polynomial min_poly(const Algebra& a, const Vector& x) {
  a.require_element(x);
  const std::size_t m = a.dim();
  const std::optional<Vector> unit = unit_element(a);
  const std::size_t n = unit ? m : m + 1;
  // multiplication by x on the ambient space
  Matrix lx(n, n);
  lx.set_block(0, 0, a.left_mult(x));
  if (!unit)
    for (std::size_t i = 0; i < m; ++i) lx(i, m) = x[i];  // x * 1 = x
  Vector power = unit ? *unit : unit_vector(n, m);
  std::vector<Vector> powers;
  while (true) {
    if (!powers.empty()) {
      const Matrix basis = Matrix::from_columns(powers, n);
      if (auto c = solve(basis, power)) {
        Vector coeffs = -*c;
        coeffs.emplace_back(1);
        return Polynomial(std::move(coeffs));
      }
    }
    powers.push_back(power);
    power = lx.apply(power);
  }
}

enum class Verdict { no, yes, indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "indeterminate";
  }
}

struct SimplicityReport {
  Verdict simple = Verdict::indeterminate;
  Verdict prime = Verdict::indeterminate;  // finite-dimensional: prime iff simple
  bool semisimple = false;
  std::size_t center_dim = 0;
  std::optional<Polynomial> central_min_poly;
  Factorization factorization;
  std::size_t attempts = 0;
  std::string evidence;
};

/// A is simple iff it is semisimple and its center is a field, i.e. the
/// minimal polynomial of a generic central element (degree dim Z) is
/// irreducible over Q. Generic elements are drawn with the given seed; after
/// `max_attempts` degenerate draws the verdict is indeterminate.
inline SimplicityReport is_simple_prime(const Algebra& a, std::uint64_t seed = kDefaultSeed,
                                        std::size_t max_attempts = 8) {
  SimplicityReport rep;
  auto decide = [&rep](Verdict v, std::string why) {
    rep.simple = rep.prime = v;
    rep.evidence = std::move(why);
    return rep;
  };
  if (a.dim() == 0) return decide(Verdict::no, "zero algebra");
  const RadicalReport rad = radical(a);
  rep.semisimple = rad.is_semisimple;
  if (!rad.is_semisimple)
    return decide(Verdict::no, "radical has dimension " + std::to_string(rad.radical.dim()) + " (not semisimple)");

  const Subspace z = center(a);
  rep.center_dim = z.dim();
  std::mt19937_64 rng(seed);
  for (rep.attempts = 1; rep.attempts <= max_attempts; ++rep.attempts) {
    Vector coeffs(z.dim());
    for (auto& c : coeffs) c = static_cast<long>(rng() % 19) - 9;
    const Vector element = z.combine(coeffs);
    if (is_zero(element)) continue;
    Polynomial mp = min_poly(a, element);
    if (mp.degree() != static_cast<long>(z.dim())) continue;
    rep.factorization = factor(mp);
    rep.central_min_poly = std::move(mp);
    const bool field = rep.factorization.irreducible();
    return decide(field ? Verdict::yes : Verdict::no,
                  "central element " + to_string(element) + " has minimal polynomial " +
                      rep.central_min_poly->to_string() + " = " + rep.factorization.to_string() +
                      (field ? " (irreducible: center is a field)" : " (reducible: non-trivial central idempotent)"));
  }
  rep.attempts = max_attempts;
  return decide(Verdict::indeterminate, "no generic central element found in " + std::to_string(max_attempts) +
                                            " draws");
}

/// Searches the space of left module homomorphisms A -> U for a surjective
/// one by trying seeded random combinations of a basis of that space. A
/// nullopt result means "not found", not "does not exist".
inline std::optional<LinearMap> find_surjective_left_hom(const Algebra& a, const Bimodule& u,
                                                         std::uint64_t seed = kDefaultSeed,
                                                         std::size_t max_attempts = 16) {
  u.require_over(a);
  const std::size_t m = a.dim();
  const std::size_t n = u.dim();
  if (n > m) return std::nullopt;
  // phi(e_i e_j) = e_i phi(e_j); unknowns are phi's entries, row-major
  Matrix sys(m * m * n, n * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t row = (i * m + j) * n + k;
        for (std::size_t l = 0; l < m; ++l) sys(row, k * m + l) += a.structure()(i, j, l);
        for (std::size_t p = 0; p < n; ++p) sys(row, p * m + j) -= u.left_tensor()(i, p, k);
      }
  const Subspace homs = nullspace(sys);
  std::mt19937_64 rng(seed);
  const std::uint64_t range = 20 * (n + 1) + 1;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Vector weights(homs.dim());
    for (auto& w : weights) w = static_cast<long>(rng() % range) - static_cast<long>(range / 2);
    LinearMap phi = Matrix::unflatten(n, m, homs.combine(weights));
    if (rank(phi) == n) return phi;
  }
  return std::nullopt;
}

}  // namespace modext
