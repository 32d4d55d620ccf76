#include <gtest/gtest.h>

#include <random>

#include "braidforge/error.hpp"
#include "braidforge/linrack.hpp"
#include "braidforge/setsol.hpp"
#include "braidforge/ybops.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace braidforge;
using namespace fixtures;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::input_invalid;
}

/// Permutation-like matrix of a set map on X^n.
TensorOperator linearize(const SetNMap& s) {
  const TensorShape shape = TensorShape::power(s.size(), s.arity());
  TensorOperator op(shape, shape);
  for (std::size_t c = 0; c < s.cells(); ++c) op.add(s.at(c), c, Scalar(1));
  return op;
}

SetNMap random_map(std::mt19937& rng, std::size_t m, std::size_t n, bool bijective) {
  const std::size_t cells = oracle::ipow(m, n);
  std::vector<std::uint32_t> table(cells);
  for (std::size_t i = 0; i < cells; ++i) table[i] = static_cast<std::uint32_t>(i);
  if (bijective)
    std::shuffle(table.begin(), table.end(), rng);
  else
    for (auto& v : table) v = static_cast<std::uint32_t>(rng() % cells);
  return SetNMap(m, n, table);
}

struct CapGuard {
  Index saved = dimension_cap();
  ~CapGuard() { set_dimension_cap(saved); }
};

const std::vector<std::size_t> t12{1, 0, 2}, t13{2, 1, 0}, t23{0, 2, 1};

}  // namespace

TEST(VerifyYBE, Examples) {
  const auto flip = permutation_operator(TensorShape::power(3, 2), {1, 0});
  auto rep = verify_ybe(flip);
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.invertible);
  EXPECT_EQ(rep.dim, 3u);
  EXPECT_EQ(rep.verification_dim, 27u);
  EXPECT_TRUE(verify_ybe(TensorOperator::identity(TensorShape::power(2, 2))).holds);
  // x⊗y ↦ x⊗x is not invertible but satisfies the equation
  const auto diag = linearize(SetNMap::from_function(2, 2, [](const Tuple& x) { return Tuple{x[0], x[0]}; }));
  rep = verify_ybe(diag);
  EXPECT_FALSE(rep.invertible);
  EXPECT_EQ(rep.holds, oracle::ybe(oracle::dense(diag), 2));
  EXPECT_EQ(code_of([] { verify_ybe(TensorOperator::identity(TensorShape({5}))); }), ErrorCode::shape_mismatch);
}

TEST(VerifyYBE, AgreesWithDenseOracle) {
  std::mt19937 rng(41);
  int holds = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto op = linearize(random_map(rng, 2, 2, trial % 2 == 0));
    const auto rep = verify_ybe(op);
    const bool expect = oracle::ybe(oracle::dense(op), 2);
    EXPECT_EQ(rep.holds, expect) << trial;
    if (!expect) {
      EXPECT_TRUE(rep.witness.has_value());
    }
    holds += expect;
  }
  EXPECT_GT(holds, 0);
  for (int trial = 0; trial < 20; ++trial) {
    TensorOperator op(TensorShape({2, 2}), TensorShape({2, 2}));
    for (Index r = 0; r < 4; ++r)
      for (Index c = 0; c < 4; ++c)
        if (rng() % 3 == 0) op.add(r, c, Scalar(static_cast<int>(rng() % 5) - 2));
    EXPECT_EQ(verify_ybe(op).holds, oracle::ybe(oracle::dense(op), 2)) << trial;
  }
}

TEST(VerifyNYBE, AgreesWithDenseOracleBothSides) {
  std::mt19937 rng(43);
  for (std::size_t n : {3u, 4u}) {
    int holds = 0;
    for (int trial = 0; trial < 60; ++trial) {
      SetNMap s = random_map(rng, 2, n, trial % 3 != 0);
      if (trial % 5 == 0) s = solution_from_nrack(n == 3 ? nrack_from_rack(flip_rack(), 3) : trivial_nrack(2, n));
      const auto op = linearize(s);
      const auto dense = oracle::dense(op);
      for (Side side : {Side::right, Side::left}) {
        const bool expect = oracle::nybe(dense, 2, n, side == Side::right);
        EXPECT_EQ(verify_nybe(op, n, side).holds, expect) << n << " " << trial;
        holds += expect;
      }
    }
    EXPECT_GT(holds, 0);
  }
}

TEST(VerifyNYBE, DimensionCap) {
  CapGuard guard;
  set_dimension_cap(100);
  const auto flip = permutation_operator(TensorShape::power(5, 2), {1, 0});
  EXPECT_EQ(code_of([&] { verify_ybe(flip); }), ErrorCode::dimension_cap_exceeded);
  EXPECT_TRUE(verify_ybe(flip, true).holds);
  EXPECT_EQ(code_of([] { verify_nybe(cyclic_operator(2, 4), 4); }), ErrorCode::dimension_cap_exceeded);
}

TEST(CentralNYB, T3BarOperator) {
  const auto bar = t3_bar();
  const auto s = nyb_from_central_nleibniz(bar);
  const TensorShape shape = TensorShape::power(4, 3);
  // S((0,e1)⊗(0,e2)⊗(0,e2)) = (0,e2)⊗(0,e2)⊗(0,e1) + 𝟏⊗𝟏⊗(0,e3)
  const auto& col = s.column(shape.flatten({1, 2, 2}));
  EXPECT_TRUE(same_columns(col, SparseVector{{shape.flatten({0, 0, 3}), Scalar(1)},
                                             {shape.flatten({2, 2, 1}), Scalar(1)}}));
  const auto rep = verify_nybe(s, 3);
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.invertible);
  EXPECT_TRUE(oracle::nybe(oracle::dense(s), 4, 3, true));
  EXPECT_EQ(compose(s, nyb_inverse_from_central_nleibniz(bar)), TensorOperator::identity(shape));
  EXPECT_EQ(compose(nyb_inverse_from_central_nleibniz(bar), s), TensorOperator::identity(shape));
}

TEST(CentralNYB, ReversalDuality) {
  const auto bar = t3_bar();
  const auto s = nyb_from_central_nleibniz(bar);
  const auto tau = reverse_conjugate(s, 3);
  EXPECT_EQ(tau, nyb_from_central_nleibniz(reversed(bar), Side::left));
  EXPECT_TRUE(verify_nybe(tau, 3, Side::left).holds);
  EXPECT_EQ(reverse_conjugate(tau, 3), s);
  std::mt19937 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const auto op = linearize(random_map(rng, 2, 3, true));
    EXPECT_EQ(verify_nybe(op, 3, Side::right).holds, verify_nybe(reverse_conjugate(op, 3), 3, Side::left).holds);
  }
}

TEST(CentralNYB, RequiresCentralAndCertified) {
  CentralNLeibnizAlgebra bad{t3_bar().algebra, basis_vector(4, 2)};
  EXPECT_EQ(code_of([&] { nyb_from_central_nleibniz(bad); }), ErrorCode::not_central);
  CentralNLeibnizAlgebra uncertified = t3_bar();
  uncertified.algebra.add_bracket({3, 2, 2}, 2, Scalar(1));
  uncertified.algebra.set_certified(false);
  EXPECT_EQ(code_of([&] { nyb_from_central_nleibniz(uncertified); }), ErrorCode::input_not_certified);
}

TEST(Iff, NLeibnizVerdictsAgree) {
  EXPECT_TRUE(nyb_iff_nleibniz(t3()).yb.holds);
  const auto broken = nyb_iff_nleibniz(t3_broken());
  EXPECT_FALSE(broken.yb.holds);
  EXPECT_FALSE(broken.identity.passed());
  std::mt19937 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    const auto b = oracle::random_bracket(rng, 3, 2, 1 + trial % 2);
    const auto r = nyb_iff_nleibniz(oracle::to_algebra(b));
    EXPECT_EQ(r.yb.holds, oracle::fundamental_identity(b)) << trial;
  }
}

TEST(Iff, LeibnizVerdictsAgree) {
  EXPECT_TRUE(r_tilde_iff_leibniz(a3()).yb.holds);
  std::mt19937 rng(59);
  int holds = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto b = oracle::random_bracket(rng, 2, 2 + trial % 2, 1 + trial % 3);
    const auto r = r_tilde_iff_leibniz(oracle::to_algebra(b));
    const bool expect = oracle::fundamental_identity(b);
    EXPECT_EQ(r.yb.holds, expect) << trial;
    EXPECT_EQ(r.identity.passed(), expect);
    holds += expect;
  }
  EXPECT_GT(holds, 0);
  EXPECT_EQ(code_of([] { r_tilde_iff_leibniz(t3()); }), ErrorCode::arity_mismatch);
}

TEST(Diagram, TildeOfCentralNYBIsLebedOfFundamentalAlgebra) {
  const auto bar = t3_bar();
  const auto s = nyb_from_central_nleibniz(bar);
  const auto st = ybe_from_nyb(s, 3);
  EXPECT_EQ(st, r_from_central_leibniz(fundamental_leibniz(bar)));
  EXPECT_TRUE(verify_ybe(st).holds);
}

TEST(Diagram, R2MatchesLinearRackRoute) {
  for (const auto& a : {t3(), NLeibnizAlgebra(3, 2)}) {
    const auto r2 = r2_from_nleibniz(a);
    EXPECT_EQ(r2, lebed_operator(linear_rack_on_tensor_power(linear_nrack_from_nleibniz(a))).first);
    EXPECT_EQ(r2, tensor_power_yb_operator(linear_nrack_from_nleibniz(a)));
    EXPECT_TRUE(verify_ybe(r2).holds);
  }
}

TEST(Diagram, EtaIntertwinesR1AndR2) {
  const auto [eta, rep] = eta_intertwiner(t3());
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  EXPECT_EQ(eta.domain().total(), 10u);
  EXPECT_EQ(eta.codomain().total(), 16u);
  const auto r1 = r1_from_nleibniz(t3()), r2 = r2_from_nleibniz(t3());
  const auto ee = tensor(eta, eta).reshaped(TensorShape({100}), TensorShape({256}));
  EXPECT_EQ(compose(r2.reshaped(TensorShape({256}), TensorShape({256})), ee),
            compose(ee, r1.reshaped(TensorShape({100}), TensorShape({100}))));
  EXPECT_TRUE(verify_ybe(r1).holds);
  DenseMatrix m(16, Vector(10, Scalar(0)));
  for (const auto& [r, c, v] : eta.entries()) m[r][c] = v;
  EXPECT_EQ(rank(m, 10), 10u);
}

TEST(NYBFromYBE, Examples) {
  const auto flip = permutation_operator(TensorShape::power(2, 2), {1, 0});
  EXPECT_EQ(nyb_from_ybe(flip, 3), cyclic_operator(2, 3));
  EXPECT_EQ(ybe_from_nyb(cyclic_operator(2, 3), 3),
            permutation_operator(TensorShape::power(2, 4), {2, 3, 0, 1}).reshaped(TensorShape({4, 4}),
                                                                                  TensorShape({4, 4})));
  const auto [r, rinv] = lebed_operator(linearize_nrack(flip_rack()));
  for (std::size_t n : {3u, 4u}) EXPECT_TRUE(verify_nybe(nyb_from_ybe(r, n), n).holds);
  TensorOperator bad(TensorShape({2, 2}), TensorShape({2, 2}));
  bad.add(1, 0, Scalar(1));
  bad.add(0, 1, Scalar(1));
  bad.add(3, 2, Scalar(1));
  bad.add(2, 3, Scalar(1));
  ASSERT_FALSE(verify_ybe(bad).holds);
  EXPECT_EQ(code_of([&] { nyb_from_ybe(bad, 3); }), ErrorCode::input_not_ybe);
  EXPECT_EQ(code_of([] { ybe_from_nyb(TensorOperator(TensorShape::power(2, 3), TensorShape::power(2, 3)), 3); }),
            ErrorCode::input_not_nybe);
}

TEST(GroupAlgebraNYB, S3Example) {
  const auto g = FiniteGroup::symmetric(3);
  const auto s = group_algebra_nyb(g, 3);
  const TensorShape shape = TensorShape::power(6, 3);
  const auto p = [](const std::vector<std::size_t>& v) { return permutation_index(v); };
  const auto& col = s.column(shape.flatten({p(t12), p(t13), p(t23)}));
  ASSERT_EQ(col.size(), 1u);
  EXPECT_EQ(col[0].first, shape.flatten({p(t13), p(t23), p(t23)}));
  const auto rep = verify_nybe(s, 3);
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.invertible);
  EXPECT_EQ(rep.verification_dim, 7776u);
  EXPECT_EQ(s, nyb_from_linear_nrack(linearize_nrack(conjugation_nrack(g, 3))).first);
}

TEST(LinearNRackNYB, KPlusCaseMatchesCentralFormula) {
  const auto [s, sinv] = nyb_from_linear_nrack(linear_nrack_from_nleibniz(t3()));
  EXPECT_EQ(s, nyb_from_central_nleibniz(t3_bar()));
  EXPECT_EQ(sinv, nyb_inverse_from_central_nleibniz(t3_bar()));
}

TEST(Conjugate, TransportedAlgebraConjugatesBack) {
  TensorOperator phi = TensorOperator::identity(TensorShape({3}));
  phi.add(0, 1, Scalar(3));
  phi.add(2, 0, Scalar::rational(1, 2));
  const auto b = transport(t3(), phi);
  TensorOperator bar_phi(TensorShape({4}), TensorShape({4}));
  bar_phi.add(0, 0, Scalar(1));
  for (const auto& [r, c, v] : phi.entries()) bar_phi.add(r + 1, c + 1, v);
  const auto s_b = nyb_from_central_nleibniz(adjoin_unit(b));
  const auto back = conjugate_nyb(s_b, bar_phi, 3);
  EXPECT_EQ(back, nyb_from_central_nleibniz(t3_bar()));
  EXPECT_TRUE(verify_nybe(back, 3).holds);
  TensorOperator singular(TensorShape({4}), TensorShape({4}));
  singular.add(0, 0, Scalar(1));
  EXPECT_EQ(code_of([&] { conjugate_nyb(s_b, singular, 3); }), ErrorCode::singular_phi);
  EXPECT_EQ(code_of([&] { conjugate_nyb(s_b, phi, 3); }), ErrorCode::shape_mismatch);
}
