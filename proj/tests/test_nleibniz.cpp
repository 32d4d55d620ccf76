#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "braidforge/error.hpp"
#include "braidforge/nleibniz.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace braidforge;
using namespace fixtures;

TEST(FundamentalIdentity, ZeroAndT3Pass) {
  for (std::size_t n = 2; n <= 4; ++n) EXPECT_TRUE(check_fundamental_identity(NLeibnizAlgebra(n, 2)).passed());
  EXPECT_TRUE(check_fundamental_identity(t3()).passed());
}

TEST(FundamentalIdentity, PerturbedT3FailsWithWitness) {
  const auto rep = check_fundamental_identity(t3_broken());
  EXPECT_FALSE(rep.passed());
  const Check* c = rep.find("fundamental_identity");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->witness.is_null());
}

TEST(FundamentalIdentity, SwapPerturbationStillHolds) {
  // [e3,e2,e2] = e1 on top of T3: ad(e2,e2) swaps e1 and e3 and stays a derivation.
  NLeibnizAlgebra a = t3();
  a.add_bracket({2, 1, 1}, 0, Scalar(1));
  EXPECT_TRUE(check_fundamental_identity(a).passed());
  EXPECT_TRUE(oracle::fundamental_identity(oracle::from_algebra(a)));
}

TEST(FundamentalIdentity, AgreesWithOracleOnRandomBrackets) {
  std::mt19937 rng(2024);
  int passes = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 2, d = 2 + trial % 2;
    const auto b = oracle::random_bracket(rng, n, d, 1 + trial % 3);
    const bool expect = oracle::fundamental_identity(b);
    EXPECT_EQ(check_fundamental_identity(oracle::to_algebra(b)).passed(), expect) << "trial " << trial;
    passes += expect;
  }
  EXPECT_GT(passes, 0);
}

TEST(NBracket, Examples) {
  EXPECT_EQ(nbracket_from_leibniz(NLeibnizAlgebra(2, 3), 4), NLeibnizAlgebra(4, 3));
  EXPECT_EQ(nbracket_from_leibniz(a3(), 3), NLeibnizAlgebra(3, 3));
  EXPECT_EQ(nbracket_from_leibniz(a3(), 2), a3());
  NLeibnizAlgebra bad(2, 1);
  bad.add_bracket({0, 0}, 0, Scalar(1));
  EXPECT_THROW(nbracket_from_leibniz(bad, 3), Error);
}

TEST(NBracket, NestedFormulaOnNonAbelianLeibniz) {
  // {e1,e2} = e1 on dim 2 is a Lie bracket (with {e2,e1} = −e1).
  NLeibnizAlgebra l(2, 2);
  l.add_bracket({0, 1}, 0, Scalar(1));
  l.add_bracket({1, 0}, 0, Scalar(-1));
  ASSERT_TRUE(check_fundamental_identity(l).passed());
  const auto a = nbracket_from_leibniz(l, 3);
  EXPECT_TRUE(a.certified());
  EXPECT_TRUE(check_fundamental_identity(a).passed());
  // {e1,{e2,e2}} = 0, {e1,{e2,e1}} = −{e1,e1} = 0, {e2,{e1,e2}} = {e2,e1} = −e1
  EXPECT_EQ(a.bracket({1, 0, 1}), (Vector{Scalar(-1), Scalar(0)}));
  const auto fl = fundamental_leibniz(a);
  EXPECT_TRUE(check_fundamental_identity(fl).passed());
}

TEST(ExtendBracket, Examples) {
  const auto zero_b = NLeibnizAlgebra(2, 3);
  EXPECT_EQ(extend_bracket_by_leibniz(a3(), zero_b), NLeibnizAlgebra(3, 3));
  const auto out = extend_bracket_by_leibniz(a3(), a3());
  EXPECT_EQ(out, NLeibnizAlgebra(3, 3));
  EXPECT_TRUE(out.certified());
  NLeibnizAlgebra b(2, 3);
  b.add_bracket({1, 0}, 0, Scalar(1));  // {e2,e1}_B = e1: {−,e2} is not a derivation of B
  try {
    extend_bracket_by_leibniz(a3(), b);
    FAIL() << "expected derivation failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::derivation_precondition_failed);
    EXPECT_FALSE(e.witness().is_null());
  }
}

TEST(FundamentalLeibniz, T3Brackets) {
  const auto fl = fundamental_leibniz(t3());
  EXPECT_EQ(fl.arity(), 2u);
  EXPECT_EQ(fl.dim(), 9u);
  // {e1⊗e2, e2⊗e2} = e3⊗e2 and {e2⊗e1, e2⊗e2} = e2⊗e3 (indices row-major, 0-based)
  EXPECT_EQ(fl.bracket_sparse({0 * 3 + 1, 1 * 3 + 1}), (SparseVector{{2 * 3 + 1, Scalar(1)}}));
  EXPECT_EQ(fl.bracket_sparse({1 * 3 + 0, 1 * 3 + 1}), (SparseVector{{1 * 3 + 2, Scalar(1)}}));
  EXPECT_TRUE(fl.certified());
  EXPECT_TRUE(check_fundamental_identity(fl).passed());
  EXPECT_EQ(fundamental_leibniz(NLeibnizAlgebra(3, 2)), NLeibnizAlgebra(2, 4));
  EXPECT_THROW(fundamental_leibniz(t3_broken()), Error);
}

TEST(FundamentalLeibniz, CentralElementCarriesOver) {
  const auto bar = adjoin_unit(t3());
  const auto fl = fundamental_leibniz(bar);
  EXPECT_TRUE(is_central(fl.algebra, fl.central));
  Vector ones = zero_vector(16);
  ones[0] = Scalar(1);
  EXPECT_TRUE(equal_vectors(fl.central, ones));
}

TEST(Ad, T3Matrix) {
  const auto m = ad_basis(t3(), {1, 1});
  EXPECT_EQ(m.nnz(), 1u);
  EXPECT_EQ(m.at(2, 0).str(), "1");
  EXPECT_EQ(ad_basis(NLeibnizAlgebra(3, 3), {0, 2}).nnz(), 0u);
  EXPECT_TRUE(is_derivation(t3(), m).passed());
}

TEST(Derivation, Examples) {
  EXPECT_TRUE(is_derivation(t3(), TensorOperator(TensorShape({3}), TensorShape({3}))).passed());
  const auto rep = is_derivation(t3(), TensorOperator::identity(TensorShape({3})));
  EXPECT_FALSE(rep.passed());
}

TEST(Derivation, AdjointsOfCertifiedAlgebrasAreDerivations) {
  const auto a = t3();
  const TensorShape ys = TensorShape::power(3, 2);
  for (Index y = 0; y < ys.total(); ++y) EXPECT_TRUE(is_derivation(a, ad_basis(a, ys.unflatten(y))).passed());
}

TEST(Exp, ExactNilpotent) {
  const auto e = exp_ad(t3(), {basis_vector(3, 1), basis_vector(3, 1)}, ScalarMode::exact);
  TensorOperator expect = TensorOperator::identity(TensorShape({3}));
  expect.add(2, 0, Scalar(1));
  EXPECT_EQ(e, expect);
  EXPECT_EQ(exp_ad(t3(), {basis_vector(3, 0), basis_vector(3, 2)}, ScalarMode::exact),
            TensorOperator::identity(TensorShape({3})));
  // exp(ad) ∘ exp(−ad) = Id
  const auto d = ad_basis(t3(), {1, 1});
  TensorOperator neg(d.domain(), d.codomain());
  for (const auto& [r, c, v] : d.entries()) neg.add(r, c, -v);
  EXPECT_EQ(compose(exp_map(d, ScalarMode::exact), exp_map(neg, ScalarMode::exact)),
            TensorOperator::identity(TensorShape({3})));
}

TEST(Exp, NonNilpotentExactFailsFloatConverges) {
  const auto l = non_nilpotent();
  const std::vector<Vector> y{basis_vector(2, 1)};
  try {
    exp_ad(l, y, ScalarMode::exact);
    FAIL() << "expected not-nilpotent";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_nilpotent);
  }
  const auto f = exp_ad(l, y, ScalarMode::float64);
  EXPECT_NEAR(f.at(0, 0).to_double(), std::exp(1.0), 1e-9);
  EXPECT_NEAR(f.at(1, 1).to_double(), 1.0, 1e-12);
}

TEST(Exp, SeriesCapReported) {
  TensorOperator big(TensorShape({1}), TensorShape({1}));
  big.add(0, 0, Scalar::from_double(200.0));
  try {
    exp_map(big, ScalarMode::float64);
    FAIL() << "expected series-not-converged";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::series_not_converged);
  }
}

TEST(AdjoinUnit, Examples) {
  const auto z = adjoin_unit(NLeibnizAlgebra(3, 2));
  EXPECT_EQ(z.algebra.dim(), 3u);
  EXPECT_EQ(z.algebra.nonzero_brackets().size(), 0u);
  const auto bar = t3_bar();
  EXPECT_EQ(bar.algebra.dim(), 4u);
  EXPECT_EQ(bar.algebra.bracket_sparse({1, 2, 2}), (SparseVector{{3, Scalar(1)}}));
  EXPECT_TRUE(is_central(bar.algebra, basis_vector(4, 0)));
  EXPECT_TRUE(bar.algebra.certified());
  EXPECT_THROW(adjoin_unit(t3_broken()), Error);
}

TEST(Center, Examples) {
  EXPECT_EQ(central_elements(NLeibnizAlgebra(3, 3)).size(), 3u);
  const auto c = central_elements(t3_bar().algebra);
  const auto in_span = [&](const Vector& v) {
    DenseMatrix m;
    for (const auto& b : c) m.push_back(b);
    const std::size_t r = rank(m, v.size());
    m.push_back(v);
    return rank(m, v.size()) == r;
  };
  EXPECT_TRUE(in_span(basis_vector(4, 0)));
  EXPECT_TRUE(in_span(basis_vector(4, 3)));
  EXPECT_FALSE(in_span(basis_vector(4, 2)));
  EXPECT_TRUE(is_central(t3(), basis_vector(3, 2)));
  for (const auto& v : c) EXPECT_TRUE(is_central(t3_bar().algebra, v));
}

TEST(Homomorphism, Examples) {
  const auto id = TensorOperator::identity(TensorShape({3}));
  EXPECT_TRUE(is_homomorphism(t3(), t3(), id).passed());
  EXPECT_TRUE(is_homomorphism(t3(), NLeibnizAlgebra(3, 1), TensorOperator(TensorShape({3}), TensorShape({1}))).passed());
  TensorOperator swap(TensorShape({3}), TensorShape({3}));
  swap.add(1, 0, Scalar(1));
  swap.add(0, 1, Scalar(1));
  swap.add(2, 2, Scalar(1));
  const auto rep = is_homomorphism(t3(), t3(), swap);
  EXPECT_FALSE(rep.passed());
}

TEST(Homomorphism, TransportIsAnIsomorphism) {
  TensorOperator phi = TensorOperator::identity(TensorShape({3}));
  phi.add(0, 1, Scalar(2));
  phi.add(2, 0, Scalar::rational(-1, 3));
  const auto b = transport(t3(), phi);
  EXPECT_TRUE(check_fundamental_identity(b).passed());
  EXPECT_TRUE(is_homomorphism(t3(), b, phi).passed());
}

TEST(Reversal, IsAnInvolutionSwappingSlots) {
  const auto r = reversed(t3());
  EXPECT_EQ(r.bracket_sparse({1, 1, 0}), (SparseVector{{2, Scalar(1)}}));
  EXPECT_EQ(reversed(r), t3());
}
