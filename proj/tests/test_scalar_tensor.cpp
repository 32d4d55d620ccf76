#include <gtest/gtest.h>

#include <random>

#include "braidforge/error.hpp"
#include "braidforge/json_util.hpp"
#include "braidforge/tensor.hpp"
#include "oracle.hpp"

using namespace braidforge;

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

TensorOperator flip(std::size_t d) { return permutation_operator(TensorShape::power(d, 2), {1, 0}); }

TensorOperator random_operator(std::mt19937& rng, std::size_t rows, std::size_t cols, double density = 0.3) {
  TensorOperator op(TensorShape({cols}), TensorShape({rows}));
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-3, 3);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (u(rng) < density) op.add(r, c, Scalar::rational(v(rng), 1 + static_cast<long>(rng() % 3)));
  return op;
}

}  // namespace

TEST(Scalar, CanonicalRationals) {
  EXPECT_EQ(Scalar::parse("6/-4").str(), "-3/2");
  EXPECT_EQ(Scalar::parse("4/2").str(), "2");
  EXPECT_EQ((Scalar::rational(1, 3) + Scalar::rational(1, 6)).str(), "1/2");
  EXPECT_TRUE((Scalar::rational(2, 4) - Scalar::rational(1, 2)).is_zero());
  EXPECT_EQ(code_of([] { Scalar::parse("1/0"); }), ErrorCode::schema_error);
  EXPECT_EQ(code_of([] { Scalar::parse("abc"); }), ErrorCode::schema_error);
  EXPECT_EQ(code_of([] { Scalar(1) / Scalar(0); }), ErrorCode::division_by_zero);
}

TEST(Scalar, FloatToleranceAndPromotion) {
  const Scalar a = Scalar::from_double(0.1 + 0.2), b = Scalar::from_double(0.3);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(Scalar::rational(3, 10) == Scalar::rational(3, 10) + Scalar::rational(1, 1000000000000));
  EXPECT_EQ((Scalar(1) + Scalar::from_double(0.5)).mode(), ScalarMode::float64);
}

TEST(Scalar, JsonForms) {
  EXPECT_EQ(scalar_to_json(Scalar::rational(-5, 3)), "-5/3");
  EXPECT_EQ(scalar_to_json(Scalar::from_double(0.25)), 0.25);
  EXPECT_EQ(scalar_from_json(nlohmann::json("7/21")).str(), "1/3");
}

TEST(TensorShape, RejectsOverflow) {
  EXPECT_EQ(code_of([] { TensorShape::power(2, 32); }), ErrorCode::index_overflow);
  const TensorShape s({2, 3, 4});
  EXPECT_EQ(s.total(), 24u);
  EXPECT_EQ(s.flatten({1, 2, 3}), 23u);
  EXPECT_EQ(s.unflatten(23), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Compose, IdentityAndFlip) {
  const auto id = TensorOperator::identity(TensorShape({4}));
  EXPECT_EQ(compose(id, id), id);
  const auto f = flip(2);
  EXPECT_EQ(compose(f, f), TensorOperator::identity(TensorShape::power(2, 2)));
  EXPECT_EQ(code_of([] {
              compose(TensorOperator::identity(TensorShape({3})), TensorOperator::identity(TensorShape({4})));
            }),
            ErrorCode::shape_mismatch);
}

TEST(Compose, MatchesDenseOracleAndIsAssociative) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_operator(rng, 4, 3), b = random_operator(rng, 3, 4), c = random_operator(rng, 4, 2);
    EXPECT_EQ(oracle::dense(compose(a, b)), oracle::mul(oracle::dense(a), oracle::dense(b)));
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(Tensor, KroneckerMatchesOracle) {
  std::mt19937 rng(11);
  const auto a = random_operator(rng, 2, 3), b = random_operator(rng, 3, 2);
  EXPECT_EQ(oracle::dense(tensor(a, b)), oracle::kron(oracle::dense(a), oracle::dense(b)));
}

TEST(Embed, Examples) {
  const auto id2 = TensorOperator::identity(TensorShape({2}));
  EXPECT_EQ(embed(id2, 1, 1, 2), TensorOperator::identity(TensorShape::power(2, 3)));
  const auto e = embed(flip(2), 0, 1, 2);
  const TensorShape s = TensorShape::power(2, 3);
  const auto col = e.column(s.flatten({0, 1, 0}));
  ASSERT_EQ(col.size(), 1u);
  EXPECT_EQ(col[0].first, s.flatten({1, 0, 0}));
}

TEST(Embed, MatchesKroneckerOracle) {
  std::mt19937 rng(3);
  TensorOperator s = random_operator(rng, 8, 8, 0.2).reshaped(TensorShape::power(2, 3), TensorShape::power(2, 3));
  for (std::size_t left = 0; left <= 2; ++left)
    EXPECT_EQ(oracle::dense(embed(s, left, 2 - left, 2)), oracle::embed(oracle::dense(s), left, 2 - left, 2));
}

TEST(Embed, FarCommutation) {
  std::mt19937 rng(5);
  const auto a = random_operator(rng, 4, 4).reshaped(TensorShape::power(2, 2), TensorShape::power(2, 2));
  const auto b = random_operator(rng, 4, 4).reshaped(TensorShape::power(2, 2), TensorShape::power(2, 2));
  // a on factors [0,2), b on [2,4) of a 5-factor space
  const auto ea = embed(a, 0, 3, 2), eb = embed(b, 2, 1, 2);
  EXPECT_EQ(compose(ea, eb), compose(eb, ea));
}

TEST(Permutation, Examples) {
  EXPECT_EQ(reverse_operator(3, 2), flip(3));
  const auto f = cyclic_operator(2, 3);
  const TensorShape s = TensorShape::power(2, 3);
  EXPECT_EQ(f.column(s.flatten({0, 1, 0}))[0].first, s.flatten({1, 0, 0}));
  TensorOperator p = f;
  for (int i = 1; i < 3; ++i) p = compose(f, p);
  EXPECT_EQ(p, TensorOperator::identity(s));
  EXPECT_EQ(code_of([&] { permutation_operator(s, {0, 0, 1}); }), ErrorCode::non_permutation);
}

TEST(Permutation, MatchesOracleAndComposes) {
  const std::vector<std::size_t> p1{2, 0, 1, 3}, p2{1, 3, 0, 2};
  const TensorShape s = TensorShape::power(2, 4);
  EXPECT_EQ(oracle::dense(permutation_operator(s, p1)), oracle::permutation(2, p1));
  std::vector<std::size_t> both(4);
  for (std::size_t i = 0; i < 4; ++i) both[i] = p1[p2[i]];
  EXPECT_EQ(compose(permutation_operator(s, p1), permutation_operator(s, p2)), permutation_operator(s, both));
}

TEST(Invert, IdentityRandomAndSingular) {
  const auto id = TensorOperator::identity(TensorShape({5}));
  EXPECT_EQ(invert(id), id);
  std::mt19937 rng(13);
  int inverted = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_operator(rng, 5, 5, 0.5);
    try {
      const auto inv = invert(a);
      EXPECT_EQ(compose(a, inv), id);
      EXPECT_EQ(compose(inv, a), id);
      ++inverted;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::singular_matrix);
    }
  }
  EXPECT_GT(inverted, 0);
  // 1⊗1⊗abc on k[x]/(x²): the image is spanned by 1⊗1⊗1 and 1⊗1⊗x.
  TensorOperator s(TensorShape::power(2, 3), TensorShape::power(2, 3));
  for (Index c = 0; c < 8; ++c) {
    const auto t = TensorShape::power(2, 3).unflatten(c);
    const std::size_t deg = t[0] + t[1] + t[2];
    if (deg <= 1) s.add(deg, c, Scalar(1));
  }
  EXPECT_EQ(code_of([&] { invert(s); }), ErrorCode::singular_matrix);
}

TEST(Deal, Examples) {
  EXPECT_EQ(deal_permutation(1, 3), TensorOperator::identity(TensorShape({3, 3})));
  const auto d = deal_permutation(2, 2);
  const TensorShape s = TensorShape::power(2, 4);
  EXPECT_EQ(d.column(s.flatten({0, 1, 1, 0}))[0].first, s.flatten({0, 1, 1, 0}));
  EXPECT_EQ(d.column(s.flatten({1, 0, 0, 1}))[0].first, s.flatten({1, 0, 0, 1}));
  EXPECT_EQ(d.column(s.flatten({0, 0, 1, 1}))[0].first, s.flatten({0, 1, 0, 1}));
  const auto d3 = deal_permutation(3, 2);
  EXPECT_EQ(compose(d3, invert(d3)), TensorOperator::identity(TensorShape::power(2, 6)));
}

TEST(SparseTensor, ApplyAtMatchesEmbed) {
  std::mt19937 rng(17);
  const auto a = random_operator(rng, 4, 4, 0.4).reshaped(TensorShape::power(2, 2), TensorShape::power(2, 2));
  const auto full = embed(a, 1, 1, 2);
  for (Index c = 0; c < 16; ++c) {
    SparseTensor t = SparseTensor::basis({2, 2, 2, 2}, c);
    t.apply_at(a, 1);
    EXPECT_TRUE(same_columns(t.entries(), full.column(c)));
  }
}

TEST(OperatorJson, RoundTrip) {
  std::mt19937 rng(19);
  const auto a = random_operator(rng, 4, 4).reshaped(TensorShape({2, 2}), TensorShape({2, 2}));
  const auto j = operator_to_json(a);
  EXPECT_EQ(operator_from_json(j), a);
  EXPECT_EQ(j.at("shape"), nlohmann::json({2, 2}));
}
