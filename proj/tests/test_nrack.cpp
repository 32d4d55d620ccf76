#include <gtest/gtest.h>

#include "braidforge/error.hpp"
#include "braidforge/nrack.hpp"
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

std::size_t perm(const std::vector<std::size_t>& images) { return permutation_index(images); }

/// Direct product of permutations, (a∘b)(i) = a(b(i)).
std::vector<std::size_t> pmul(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

std::vector<std::size_t> pinv(const std::vector<std::size_t>& a) {
  std::vector<std::size_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = i;
  return out;
}

const std::vector<std::size_t> t12{1, 0, 2}, t13{2, 1, 0}, t23{0, 2, 1}, c123{1, 2, 0};

FiniteNRack table_of(std::size_t m, std::size_t n, const std::function<std::size_t(const Tuple&)>& f) {
  return FiniteNRack::from_function(m, n, f);
}

}  // namespace

TEST(CheckNRack, Examples) {
  EXPECT_TRUE(check_nrack(trivial_nrack(3, 3)).passed());
  EXPECT_TRUE(check_nrack(flip_rack()).passed());
  const auto meet = table_of(2, 2, [](const Tuple& x) { return x[0] * x[1]; });
  const auto rep = check_nrack(meet);
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.check_passed("translations_bijective"));
  EXPECT_EQ(rep.find("translations_bijective")->witness.at("y"), nlohmann::json({0}));
}

TEST(CheckNRack, AgreesWithOracleOnAllSmallTables) {
  for (std::size_t n : {2u, 3u}) {
    const std::size_t cells = oracle::ipow(2, n);
    for (std::size_t code = 0; code < (std::size_t{1} << cells); ++code) {
      auto f = [&](const Tuple& x) { return (code >> oracle::undigits(x, 2)) & 1u; };
      EXPECT_EQ(check_nrack(table_of(2, n, f)).passed(), oracle::is_nrack(2, n, f)) << n << " " << code;
    }
  }
}

TEST(Conjugation, Examples) {
  EXPECT_EQ(conjugation_nrack(FiniteGroup::cyclic(4), 3), trivial_nrack(4, 3));
  const auto t = conjugation_nrack(FiniteGroup::symmetric(3), 3);
  EXPECT_EQ(t({perm(t12), perm(t13), perm(t23)}), perm(t23));
  EXPECT_TRUE(t.certified());
  EXPECT_TRUE(check_nrack(t).passed());
  const auto r = conjugation_nrack(FiniteGroup::symmetric(3), 2);
  for (const auto& g : symmetric_group_elements(3))
    for (const auto& h : symmetric_group_elements(3))
      EXPECT_EQ(r({perm(g), perm(h)}), perm(pmul(pmul(h, g), pinv(h))));
}

TEST(Group, RejectsNonGroups) {
  EXPECT_EQ(code_of([] { FiniteGroup({{0, 1}, {1, 1}}); }), ErrorCode::input_invalid);
  EXPECT_EQ(code_of([] { FiniteGroup({{0, 0}, {0, 0}}); }), ErrorCode::input_invalid);
}

TEST(NRackFromRack, Examples) {
  EXPECT_EQ(nrack_from_rack(trivial_nrack(3, 2), 4), trivial_nrack(3, 4));
  EXPECT_EQ(nrack_from_rack(flip_rack(), 3), trivial_nrack(2, 3));
  const auto g = FiniteGroup::symmetric(3);
  EXPECT_EQ(nrack_from_rack(conjugation_nrack(g, 2), 3), conjugation_nrack(g, 3));
  const auto meet = table_of(2, 2, [](const Tuple& x) { return x[0] * x[1]; });
  EXPECT_EQ(code_of([&] { nrack_from_rack(meet, 3); }), ErrorCode::input_not_certified);
}

TEST(ExtendRackByOp, Examples) {
  const auto constant = table_of(3, 2, [](const Tuple&) { return std::size_t{1}; });
  EXPECT_EQ(extend_rack_by_op(trivial_nrack(3, 2), constant), trivial_nrack(3, 3));
  const auto g = FiniteGroup::symmetric(3);
  const auto product = table_of(6, 2, [&](const Tuple& x) { return g.mul(x[1], x[0]); });
  const auto out = extend_rack_by_op(conjugation_nrack(g, 2), product);
  EXPECT_EQ(out, conjugation_nrack(g, 3));
  const auto meet = table_of(2, 2, [](const Tuple& x) { return x[0] * x[1]; });
  EXPECT_EQ(code_of([&] { extend_rack_by_op(flip_rack(), meet); }), ErrorCode::equivariance_failed);
}

TEST(CombineCompatible, Examples) {
  EXPECT_EQ(combine_compatible(trivial_nrack(2, 2), trivial_nrack(2, 3)), trivial_nrack(2, 4));
  const auto g = FiniteGroup::symmetric(3);
  const auto c2 = conjugation_nrack(g, 2);
  EXPECT_EQ(combine_compatible(c2, c2), conjugation_nrack(g, 3));
  const auto dihedral = table_of(3, 2, [](const Tuple& x) { return (2 * x[1] + 3 - x[0]) % 3; });
  const auto shift = table_of(3, 2, [](const Tuple& x) { return (x[0] + 1) % 3; });
  ASSERT_TRUE(check_nrack(dihedral).passed());
  ASSERT_TRUE(check_nrack(shift).passed());
  EXPECT_EQ(code_of([&] { combine_compatible(dihedral, shift); }), ErrorCode::compatibility_failed);
}

TEST(RackFromNRack, Examples) {
  EXPECT_EQ(rack_from_nrack(trivial_nrack(2, 3)), trivial_nrack(4, 2));
  const auto g = FiniteGroup::symmetric(3);
  const auto t = conjugation_nrack(g, 3);
  const auto r = rack_from_nrack(t);
  EXPECT_EQ(r.size(), 36u);
  EXPECT_TRUE(check_nrack(r).passed());
  // ((12),(13)) ◁ ((23),(123)): conjugate each component by (123)(23)
  const auto conj = pmul(c123, t23);
  auto act = [&](const std::vector<std::size_t>& x) { return perm(pmul(pmul(conj, x), pinv(conj))); };
  const std::size_t x = perm(t12) * 6 + perm(t13), y = perm(t23) * 6 + perm(c123);
  EXPECT_EQ(r({x, y}), act(t12) * 6 + act(t13));
  EXPECT_EQ(code_of([&] { rack_from_nrack(t, 10); }), ErrorCode::carrier_too_large);
}

TEST(RackFromNRack, RoundTripIsComponentwiseIteration) {
  const auto rack = conjugation_nrack(FiniteGroup::symmetric(3), 2);
  const auto back = rack_from_nrack(nrack_from_rack(rack, 3));
  for (std::size_t x = 0; x < 36; ++x)
    for (std::size_t y = 0; y < 36; ++y) {
      const std::size_t y1 = y / 6, y2 = y % 6;
      auto it = [&](std::size_t a) { return rack({rack({a, y1}), y2}); };
      EXPECT_EQ(back({x, y}), it(x / 6) * 6 + it(x % 6));
    }
}

TEST(KRackFromPower, Examples) {
  const auto g = FiniteGroup::symmetric(3);
  const auto t = conjugation_nrack(g, 3);
  EXPECT_EQ(krack_from_power(t, 2, 3), rack_from_nrack(t));
  EXPECT_EQ(krack_from_power(trivial_nrack(2, 5), 3, 3), trivial_nrack(4, 3));
  const auto c3 = conjugation_nrack(g, 3);
  EXPECT_EQ(krack_from_power(c3, 3, 2), c3);
  const auto k5 = krack_from_power(nrack_from_rack(flip_rack(), 5), 3, 3);
  EXPECT_EQ(k5.size(), 4u);
  EXPECT_EQ(k5.arity(), 3u);
  EXPECT_TRUE(check_nrack(k5).passed());
  EXPECT_EQ(code_of([&] { krack_from_power(t, 3, 3); }), ErrorCode::arity_mismatch);
}

TEST(Reversal, SwapsSides) {
  const auto t = conjugation_nrack(FiniteGroup::symmetric(3), 3);
  const auto r = reversed(t);
  EXPECT_EQ(r.side(), Side::left);
  EXPECT_TRUE(check_nrack(r).passed());
  EXPECT_EQ(reversed(r), t);
  const auto meet = table_of(2, 2, [](const Tuple& x) { return x[0] * x[1]; });
  EXPECT_FALSE(check_nrack(reversed(meet)).passed());
}

TEST(VectorNRack, Examples) {
  const auto z = nrack_from_nleibniz(NLeibnizAlgebra(3, 2), ScalarMode::exact);
  const Vector x1{Scalar(2), Scalar(-1)};
  EXPECT_TRUE(equal_vectors(z({x1, basis_vector(2, 0), basis_vector(2, 1)}), x1));
  const auto r = nrack_from_nleibniz(t3(), ScalarMode::exact);
  EXPECT_TRUE(r.validation().passed());
  EXPECT_TRUE(equal_vectors(r({basis_vector(3, 0), basis_vector(3, 1), basis_vector(3, 1)}),
                            (Vector{Scalar(1), Scalar(0), Scalar(1)})));
  EXPECT_TRUE(check_vector_nrack(r).passed());
  EXPECT_EQ(code_of([] { nrack_from_nleibniz(non_nilpotent(), ScalarMode::exact); }), ErrorCode::not_nilpotent);
  const auto f = nrack_from_nleibniz(non_nilpotent(), ScalarMode::float64);
  EXPECT_TRUE(f.validation().passed());
}

TEST(VectorNRack, TranslationsInvertibleOnGrid) {
  const auto r = nrack_from_nleibniz(t3(), ScalarMode::exact);
  const auto grid = sample_grid(3);
  EXPECT_EQ(grid.size(), 6u);
  for (const auto& y1 : grid)
    for (const auto& y2 : grid) EXPECT_NO_THROW(invert(r.translation({y1, y2})));
}

TEST(VectorNRack, HomomorphismFunctoriality) {
  TensorOperator phi = TensorOperator::identity(TensorShape({3}));
  phi.add(0, 1, Scalar(1));
  phi.add(2, 1, Scalar::rational(1, 2));
  const auto b = transport(t3(), phi);
  const auto ra = nrack_from_nleibniz(t3(), ScalarMode::exact);
  const auto rb = nrack_from_nleibniz(b, ScalarMode::exact);
  const auto grid = sample_grid(3);
  for (const auto& x : grid)
    for (const auto& y : grid)
      for (const auto& z : grid) {
        const Vector lhs = apply_map(phi, ra({x, y, z}));
        const Vector rhs = rb({apply_map(phi, x), apply_map(phi, y), apply_map(phi, z)});
        EXPECT_TRUE(equal_vectors(lhs, rhs));
      }
}

TEST(TensorEmbedding, Examples) {
  EXPECT_TRUE(verify_tensor_embedding(NLeibnizAlgebra(3, 2)).passed());
  EXPECT_TRUE(verify_tensor_embedding(t3()).passed());
  // ad_{y⊗y} on the fundamental algebra is ad_y ⊗ Id + Id ⊗ ad_y
  const auto fl = fundamental_leibniz(t3());
  const auto a = ad_basis(fl, {1 * 3 + 1});
  const auto e = ad_basis(t3(), {1, 1});
  const auto id = TensorOperator::identity(TensorShape({3}));
  TensorOperator expect = tensor(e, id);
  for (const auto& [r, c, v] : tensor(id, e).entries()) expect.add(r, c, v);
  EXPECT_EQ(a, expect);
  TensorOperator sq(a.domain(), a.codomain());
  for (const auto& [r, c, v] : tensor(e, e).entries()) sq.add(r, c, Scalar(2) * v);
  EXPECT_EQ(compose(a, a), sq);
}
