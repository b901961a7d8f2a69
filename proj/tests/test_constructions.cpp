#include <modext/catalog.hpp>
#include <modext/constructions.hpp>
#include <modext/structure.hpp>

#include <gtest/gtest.h>

#include "oracle/brute_force.hpp"
#include "support/corpus.hpp"

#include <random>

using namespace modext;

namespace {

const Vector E11{1, 0, 0, 0}, E12{0, 1, 0, 0}, E21{0, 0, 1, 0}, E22{0, 0, 0, 1};

Matrix eps_derivation() {
  Matrix d(2, 2);
  d(1, 1) = 1;
  return d;
}

// Leibniz rule on T evaluated with the oracle's product table.
bool oracle_is_derivation(const ModuleExtension& t, const LinearMap& d) {
  const oracle::Product mul = corpus::oracle_product(t.total);
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) {
      const Vector ei = oracle::unit(t.dim(), i), ej = oracle::unit(t.dim(), j);
      if (d.apply(mul(ei, ej)) != mul(ei, d.apply(ej)) + mul(d.apply(ei), ej)) return false;
    }
  return true;
}

}  // namespace

TEST(Lift, ZeroAndDualNumbers) {
  const Algebra dual = catalog::dual_numbers();
  const ModuleExtension t = trivial_extension(dual, regular_bimodule(dual));
  EXPECT_TRUE(lift(t, Matrix(2, 2)).derivation.is_zero());
  const ConstructionResult r = lift(t, eps_derivation());
  EXPECT_EQ(r.extension.dim(), 4u);
  EXPECT_TRUE(r.verification.passed());
  EXPECT_TRUE(oracle_is_derivation(r.extension, r.derivation));
  EXPECT_EQ(r.recipe, "lift");
}

TEST(Lift, RejectsIdentityOnM2) {
  const Algebra m2 = catalog::matrix_algebra(2);
  const ModuleExtension t = trivial_extension(m2, regular_bimodule(m2));
  try {
    lift(t, Matrix::identity(4));
    FAIL() << "expected HypothesisError";
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.hypothesis(), "delta is a derivation A -> U");
    EXPECT_NE(e.witness().find("(0,0)"), std::string::npos);
  }
}

TEST(Lift, ImageIsTheDelta2OnlyPartOfDerT) {
  for (const auto& e : corpus::pairs()) {
    const ModuleExtension t = trivial_extension(e.a, e.u);
    std::vector<Vector> lifted;
    for (const auto& delta : derivation_space(e.a, e.u).basis) lifted.push_back(lift(t, delta).derivation.flatten());
    const Subspace image = Subspace::span(t.dim() * t.dim(), lifted);
    EXPECT_EQ(image.dim(), lifted.size()) << e.name;  // injective

    // derivations of T whose delta1, tau1, tau2 blocks vanish
    const DerivationSpace der_t = derivation_space(t.total, regular_bimodule(t.total));
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < t.dim(); ++r)
      for (std::size_t c = 0; c < t.dim(); ++c) {
        if (r >= t.base_dim() && c < t.base_dim()) continue;  // delta2 entries are free
        Vector row(der_t.dim());
        for (std::size_t k = 0; k < der_t.dim(); ++k) row[k] = der_t.basis[k](r, c);
        rows.push_back(row);
      }
    const Subspace kernel = nullspace(Matrix::from_rows(rows, der_t.dim()));
    std::vector<Vector> delta2_only;
    for (const auto& coeffs : kernel.vectors()) delta2_only.push_back(der_t.space.combine(coeffs));
    EXPECT_EQ(image, Subspace::span(t.dim() * t.dim(), delta2_only)) << e.name;
  }
}

TEST(Transport, IdentityMapsGiveDeltaTwice) {
  const Algebra ut2 = catalog::upper_triangular(2);
  const ModuleExtension t = trivial_extension(ut2, regular_bimodule(ut2));
  const LinearMap delta = inner_derivation(ut2, regular_bimodule(ut2), {0, 1, 0});
  const ConstructionResult r = transport(t, delta, Matrix::identity(3), Matrix::identity(3));
  const BlockDecomposition b = blocks_of(t, r.derivation);
  EXPECT_EQ(b.delta1, delta);
  EXPECT_EQ(b.tau2, delta);
  EXPECT_TRUE(b.tau1.is_zero());
  EXPECT_TRUE(b.delta2.is_zero());
  EXPECT_TRUE(transport(t, Matrix(3, 3), Matrix::identity(3), Matrix::identity(3)).derivation.is_zero());
}

TEST(Transport, BlockDiagonalPairThroughFirstSummand) {
  const Algebra m2 = catalog::matrix_algebra(2);
  const Algebra a = catalog::direct_sum(m2, m2);
  Matrix proj(4, 8), emb(8, 4);
  for (std::size_t i = 0; i < 4; ++i) proj(i, i) = emb(i, i) = 1;
  const Bimodule u = catalog::restrict_scalars(a, m2, proj, regular_bimodule(m2));
  const ModuleExtension t = trivial_extension(a, u);
  Vector x = zero_vector(8);
  x[1] = 1;  // E12 in the first summand
  x[2] = 2;
  const LinearMap delta = inner_derivation(a, regular_bimodule(a), x);
  const ConstructionResult r = transport(t, delta, proj, emb);
  const BlockDecomposition b = blocks_of(t, r.derivation);
  EXPECT_EQ(b.tau2, proj * delta * emb);
  EXPECT_TRUE(oracle_is_derivation(t, r.derivation));
}

TEST(Transport, NamesFailedHypothesis) {
  const Algebra ut2 = catalog::upper_triangular(2);
  const ModuleExtension t = trivial_extension(ut2, regular_bimodule(ut2));
  const LinearMap delta = inner_derivation(ut2, regular_bimodule(ut2), {0, 1, 0});
  const Matrix id = Matrix::identity(3);
  auto hypothesis_of = [&](const Matrix& d, const Matrix& phi, const Matrix& psi) {
    try {
      transport(t, d, phi, psi);
    } catch (const HypothesisError& e) {
      return e.hypothesis();
    }
    return std::string("accepted");
  };
  EXPECT_EQ(hypothesis_of(id, id, id), "delta is a derivation of A");
  EXPECT_EQ(hypothesis_of(delta, ut2.left_mult(0), id), "phi is an A-bimodule homomorphism A -> U");
  EXPECT_EQ(hypothesis_of(delta, id, ut2.right_mult(0)), "psi is an A-bimodule homomorphism U -> A");
  EXPECT_EQ(hypothesis_of(delta, Rational(2) * id, id), "phi o psi = I_U");
}

TEST(QuotientDerivation, TrivialIdeals) {
  const Algebra ut2 = catalog::upper_triangular(2);
  const LinearMap delta = inner_derivation(ut2, regular_bimodule(ut2), {0, 1, 0});
  const ConstructionResult zero = quotient_derivation(ut2, Subspace::zero(3), delta);
  EXPECT_EQ(blocks_of(zero.extension, zero.derivation).tau2, delta);
  const ConstructionResult full = quotient_derivation(ut2, Subspace::full(3), delta);
  EXPECT_EQ(full.extension.dim(), 3u);
  EXPECT_EQ(full.derivation, delta);
}

TEST(QuotientDerivation, UpperTriangularModE12) {
  const Algebra ut2 = catalog::upper_triangular(2);
  // ad_{E11}: E12 -> -E12, stays in I
  const LinearMap delta = inner_derivation(ut2, regular_bimodule(ut2), {1, 0, 0});
  const ConstructionResult r = quotient_derivation(ut2, Subspace::span(3, {{0, 1, 0}}), delta);
  const BlockDecomposition b = blocks_of(r.extension, r.derivation);
  EXPECT_TRUE(b.tau2.is_zero());
  EXPECT_TRUE(r.verification.find("commuting square")->passed());
  EXPECT_TRUE(oracle_is_derivation(r.extension, r.derivation));
}

TEST(QuotientDerivation, RejectsBadInputs) {
  const Algebra z = catalog::zero_product(2);
  Matrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  try {
    quotient_derivation(z, Subspace::span(2, {{1, 0}}), swap);
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.hypothesis(), "delta(I) is contained in I");
    EXPECT_NE(e.witness().find("(0, 1)"), std::string::npos);
  }
  const Algebra m2 = catalog::matrix_algebra(2);
  EXPECT_THROW(quotient_derivation(m2, Subspace::span(4, {E11}), Matrix(4, 4)), HypothesisError);
}

TEST(CornerModule, Examples) {
  const Algebra m2 = catalog::matrix_algebra(2);
  const CornerModule full = corner_module(m2, E11 + E22);
  EXPECT_EQ(full.module.dim(), 4u);
  EXPECT_TRUE(is_zero(full.module.right_tensor().fibre(0, 0)));

  const CornerModule c = corner_module(m2, E11);
  EXPECT_EQ(c.module.dim(), 2u);
  EXPECT_EQ(c.carrier, Subspace::span(4, {E11, E21}));

  try {
    corner_module(m2, E12);
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.hypothesis(), "p is idempotent");
  }
  EXPECT_THROW(corner_module(m2, zero_vector(4)), HypothesisError);
}

TEST(CornerModule, FaithfulOverSimpleAlgebras) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const Algebra mn = catalog::matrix_algebra(n);
    ASSERT_EQ(is_simple_prime(mn).simple, Verdict::yes);
    for (std::size_t i = 0; i < n; ++i) {
      Vector p = zero_vector(n * n);
      p[i * n + i] = 1;
      EXPECT_TRUE(annihilator(mn, corner_module(mn, p).module).is_zero());
    }
  }
  const Algebra sqrt2 = catalog::polynomial_quotient({-2, 0});
  EXPECT_TRUE(annihilator(sqrt2, corner_module(sqrt2, {1, 0}).module).is_zero());
}

TEST(CornerTau, Examples) {
  const Algebra m2 = catalog::matrix_algebra(2);
  const ConstructionResult zero = corner_tau(m2, E11, Matrix(4, 4));
  EXPECT_TRUE(zero.derivation.is_zero());

  // delta(a) = E12 a - a E12
  const LinearMap delta = inner_derivation(m2, regular_bimodule(m2), -E12);
  EXPECT_EQ(delta.apply(E21), E11 - E22);
  const ConstructionResult r = corner_tau(m2, E11, delta);
  ASSERT_EQ(r.extension.dim(), 6u);
  const CornerModule c = corner_module(m2, E11);
  const BlockDecomposition b = blocks_of(r.extension, r.derivation);
  EXPECT_TRUE(is_zero(b.tau2.apply(c.carrier.coordinates(E11))));
  EXPECT_EQ(c.carrier.combine(b.tau2.apply(c.carrier.coordinates(E21))), E11);
  EXPECT_TRUE(oracle_is_derivation(r.extension, r.derivation));
}

TEST(Constructions, OutputsAreDerivationsAcrossCorpus) {
  std::mt19937_64 rng(9);
  for (const auto& e : corpus::pairs()) {
    const ModuleExtension t = trivial_extension(e.a, e.u);
    const DerivationSpace der_au = derivation_space(e.a, e.u);
    const DerivationSpace der_a = derivation_space(e.a, regular_bimodule(e.a));
    Vector w(der_au.dim());
    for (auto& x : w) x = corpus::small_rational(rng);
    const ConstructionResult r = lift(t, Matrix::unflatten(e.u.dim(), e.a.dim(), der_au.space.combine(w)));
    EXPECT_TRUE(is_derivation(r.extension, r.derivation).passed()) << e.name;
    for (const auto& delta : der_a.basis) {
      const ConstructionResult q = quotient_derivation(e.a, Subspace::zero(e.a.dim()), delta);
      EXPECT_TRUE(is_derivation(q.extension, q.derivation).passed()) << e.name;
    }
  }
}
