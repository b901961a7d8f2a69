#pragma once

// Recipes that build derivations on module extensions from derivations of
// the base algebra. Each recipe audits its hypotheses (throwing
// HypothesisError with the hypothesis name and a witness) and verifies its
// output before returning it.

#include <modext/algebra.hpp>
#include <modext/blocks.hpp>
#include <modext/conditions.hpp>
#include <modext/derivations.hpp>
#include <modext/extension.hpp>
#include <modext/linalg.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace modext {

struct ConstructionResult {
  std::string recipe;
  ModuleExtension extension;
  LinearMap derivation;
  ConditionReport verification;
};

namespace detail {

inline void require(const ConditionReport& r, const std::string& hypothesis) {
  if (const Check* bad = r.first_failure()) throw HypothesisError(hypothesis, *bad);
}

/// tau(a x) = a tau(x) + delta(a) x and tau(x a) = tau(x) a + x delta(a).
inline ConditionReport tau_identities(const Algebra& a, const Bimodule& u, const LinearMap& delta,
                                      const LinearMap& tau) {
  Check left{.name = "tau left identity", .statement = "tau(a x) = a tau(x) + delta(a) x"};
  Check right{.name = "tau right identity", .statement = "tau(x a) = tau(x) a + x delta(a)"};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Matrix l_delta = u.left_action(delta.column(i));
    const Matrix r_delta = u.right_action(delta.column(i));
    for (std::size_t j = 0; j < u.dim(); ++j) {
      left.expect_equal({i, j}, tau.apply(u.left_action(i).column(j)),
                        u.left_action(i).apply(tau.column(j)) + l_delta.column(j));
      right.expect_equal({j, i}, tau.apply(u.right_action(i).column(j)),
                         u.right_action(i).apply(tau.column(j)) + r_delta.column(j));
    }
  }
  return ConditionReport{{left, right}};
}

/// Verifies d on t (Leibniz rule plus block conditions) and packages the result.
inline ConstructionResult finish(std::string recipe, ModuleExtension t, LinearMap d, ConditionReport extra) {
  ConditionReport verification = is_derivation(t, d);
  verification.append(check_block_conditions(t, blocks_of(t, d)));
  verification.append(extra);
  if (!verification.passed()) throw std::logic_error(recipe + ": constructed map failed verification");
  return ConstructionResult{std::move(recipe), std::move(t), std::move(d), std::move(verification)};
}

}  // namespace detail

/// D(a,u) = (0, delta(a)). D is a derivation iff delta is, so a
/// non-derivation delta is rejected.
inline ConstructionResult lift(const ModuleExtension& t, const LinearMap& delta) {
  detail::require(is_derivation(t.base, t.module, delta), "delta is a derivation A -> U");
  BlockDecomposition b = BlockDecomposition::zero(t);
  b.delta2 = delta;
  return detail::finish("lift", t, assemble(t, b), {});
}

/// tau = phi o delta o psi for bimodule homomorphisms phi : A -> U and
/// psi : U -> A with phi o psi = I_U; D(a,x) = (delta(a), tau(x)).
inline ConstructionResult transport(const ModuleExtension& t, const LinearMap& delta, const LinearMap& phi,
                                    const LinearMap& psi) {
  const Algebra& a = t.base;
  const Bimodule& u = t.module;
  const Bimodule self = regular_bimodule(a);
  require_map_shape(delta, a.dim(), a.dim());
  require_map_shape(phi, u.dim(), a.dim());
  require_map_shape(psi, a.dim(), u.dim());
  detail::require(is_derivation(a, self, delta), "delta is a derivation of A");
  detail::require(is_module_hom(a, self, u, phi), "phi is an A-bimodule homomorphism A -> U");
  detail::require(is_module_hom(a, u, self, psi), "psi is an A-bimodule homomorphism U -> A");
  const Matrix composite = phi * psi;
  if (composite != Matrix::identity(u.dim())) {
    Check c{.name = "phi o psi = I_U"};
    for (std::size_t j = 0; j < u.dim(); ++j)
      c.expect_equal({j}, composite.column(j), unit_vector(u.dim(), j));
    throw HypothesisError("phi o psi = I_U", c);
  }
  const LinearMap tau = phi * delta * psi;
  BlockDecomposition b = BlockDecomposition::zero(t);
  b.delta1 = delta;
  b.tau2 = tau;
  return detail::finish("transport", t, assemble(t, b), detail::tau_identities(a, u, delta, tau));
}

/// On T(A, A/I): tau(a + I) = delta(a) + I, D(a, u) = (delta(a), tau(u)).
/// Requires I to be an ideal with delta(I) contained in I.
inline ConstructionResult quotient_derivation(const Algebra& a, const Subspace& ideal, const LinearMap& delta) {
  require_map_shape(delta, a.dim(), a.dim());
  detail::require(ideal_check(a, ideal), "I is a two-sided ideal");
  detail::require(is_derivation(a, delta), "delta is a derivation of A");
  for (std::size_t g = 0; g < ideal.dim(); ++g) {
    const Vector image = delta.apply(ideal.basis().row(g));
    if (!ideal.contains(image))
      throw HypothesisError("delta(I) is contained in I",
                            "delta" + to_string(ideal.basis().row(g)) + " = " + to_string(image) + " lies outside I");
  }
  QuotientBimodule q = quotient_bimodule(a, ideal);
  const LinearMap& proj = q.coords.projection;
  const LinearMap tau = proj * delta * q.coords.section;

  Check square{.name = "commuting square", .statement = "projection o delta = tau o projection"};
  const Matrix lhs = proj * delta;
  const Matrix rhs = tau * proj;
  for (std::size_t i = 0; i < a.dim(); ++i) square.expect_equal({i}, lhs.column(i), rhs.column(i));
  ConditionReport extra = detail::tau_identities(a, q.module, delta, tau);
  extra.checks.push_back(std::move(square));

  ModuleExtension t = trivial_extension(a, q.module);
  BlockDecomposition b = BlockDecomposition::zero(t);
  b.delta1 = delta;
  b.tau2 = tau;
  LinearMap d = assemble(t, b);
  return detail::finish("quotient", std::move(t), std::move(d), std::move(extra));
}

/// U = Ap (image of right multiplication by p) with the left action of A
/// and the zero right action.
struct CornerModule {
  Bimodule module;
  Subspace carrier;  // Ap inside A; module coordinates are coordinates in carrier.basis()
};

inline CornerModule corner_module(const Algebra& a, const Vector& p) {
  a.require_element(p);
  const IdempotentStatus s = is_idempotent(a, p);
  if (!s.nontrivial) throw HypothesisError("p is non-zero", "p = " + to_string(p));
  if (!s.idempotent)
    throw HypothesisError("p is idempotent", "p p = " + to_string(a.mul(p, p)) + " differs from p = " + to_string(p));
  Subspace carrier = column_space(a.right_mult(p));
  const std::size_t k = carrier.dim();
  Tensor3 left(a.dim(), k, k);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      left.set_fibre(i, j, carrier.coordinates(a.left_mult(i).apply(carrier.basis().row(j))));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < k; ++j) names.push_back("x" + std::to_string(j));
  Bimodule u = make_bimodule(a, left, Tensor3(k, a.dim(), k), std::move(names));
  return CornerModule{std::move(u), std::move(carrier)};
}

/// On T(A, Ap): tau(x) = delta(x) p for x in Ap, D(a, x) = (delta(a), tau(x)).
inline ConstructionResult corner_tau(const Algebra& a, const Vector& p, const LinearMap& delta) {
  CornerModule cm = corner_module(a, p);
  require_map_shape(delta, a.dim(), a.dim());
  detail::require(is_derivation(a, delta), "delta is a derivation of A");
  const std::size_t k = cm.carrier.dim();
  const Matrix right_p = a.right_mult(p);
  LinearMap tau(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const Vector image = right_p.apply(delta.apply(cm.carrier.basis().row(j)));
    if (!cm.carrier.contains(image)) throw std::logic_error("corner_tau: tau escapes Ap");
    tau.set_column(j, cm.carrier.coordinates(image));
  }
  ConditionReport extra = detail::tau_identities(a, cm.module, delta, tau);
  ModuleExtension t = trivial_extension(a, cm.module);
  BlockDecomposition b = BlockDecomposition::zero(t);
  b.delta1 = delta;
  b.tau2 = tau;
  LinearMap d = assemble(t, b);
  return detail::finish("corner", std::move(t), std::move(d), std::move(extra));
}

}  // namespace modext
