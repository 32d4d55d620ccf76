// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "braidforge/error.hpp"
#include "braidforge/linrack.hpp"
#include "braidforge/nleibniz.hpp"
#include "braidforge/nrack.hpp"
#include "braidforge/setsol.hpp"
#include "braidforge/ybops.hpp"
#include "fixtures.hpp"

using namespace braidforge;
using namespace fixtures;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> body;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

NLeibnizAlgebra random_perturbation(std::mt19937& rng, std::size_t d) {
  NLeibnizAlgebra a = d == 3 ? t3() : NLeibnizAlgebra(3, d);
  std::uniform_int_distribution<std::size_t> slot(0, d - 1), terms(1, 2);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (std::size_t t = terms(rng); t > 0; --t) {
    int c = 0;
    while (c == 0) c = coef(rng);
    a.add_bracket({slot(rng), slot(rng), slot(rng)}, slot(rng), Scalar(c));
  }
  return a;
}

Outcome ac1() {
  std::mt19937 rng(20260101);
  std::vector<NLeibnizAlgebra> cases{t3(), NLeibnizAlgebra(3, 3)};
  for (int i = 0; i < 50; ++i) cases.push_back(random_perturbation(rng, 2 + i % 2));
  std::size_t holds = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    try {
      const auto r = nyb_iff_nleibniz(cases[i]);
      if (r.yb.holds != r.identity.passed()) return fail("verdicts differ on case " + std::to_string(i));
      holds += r.yb.holds;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::verdict_disagreement) return fail("verdicts differ on case " + std::to_string(i));
      throw;
    }
  }
  return {true, std::to_string(cases.size()) + " brackets, " + std::to_string(holds) + " satisfy both"};
}

Outcome ac2() {
  const auto s = nyb_from_central_nleibniz(t3_bar());
  const auto rep = verify_nybe(s, 3, Side::right);
  if (!rep.holds) return fail("equation fails");
  if (rep.verification_dim != 1024) return fail("verification dim " + std::to_string(rep.verification_dim));
  const auto inv = invert(s);
  if (compose(s, inv) != TensorOperator::identity(s.domain())) return fail("inverse does not compose to Id");
  return {true, "dim 1024, invertible"};
}

/// y⊗z⊗x + y⊗1⊗{x,z} + 1⊗z⊗{x,y} + 1⊗1⊗{{x,y},z} on the basis of k⊕L.
TensorOperator closed_formula(const CentralNLeibnizAlgebra& cl) {
  const std::size_t d = cl.algebra.dim();
  const TensorShape shape = TensorShape::power(d, 3);
  TensorOperator f(shape, shape);
  const auto br = [&](std::size_t a, std::size_t b) { return cl.algebra.bracket_sparse({a, b}); };
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        const Index col = shape.flatten({x, y, z});
        f.add(shape.flatten({y, z, x}), col, Scalar(1));
        for (const auto& [k, v] : br(x, z)) f.add(shape.flatten({y, 0, k}), col, v);
        for (const auto& [k, v] : br(x, y)) {
          f.add(shape.flatten({0, z, k}), col, v);
          for (const auto& [k2, v2] : br(k, z)) f.add(shape.flatten({0, 0, k2}), col, v * v2);
        }
      }
  return f;
}

Outcome ac3() {
  const auto kl = adjoin_unit(a3());
  const auto r = lebed_operator(linear_nrack_from_nleibniz(a3())).first;
  const auto s = nyb_from_ybe(r, 3);
  if (!verify_nybe(s, 3).holds) return fail("lifted operator fails the 3-YBE");
  if (const auto diff = first_difference(s, closed_formula(kl)))
    return fail("lift differs from the closed formula at column " + std::to_string(*diff));
  const auto st = ybe_from_nyb(nyb_from_central_nleibniz(t3_bar()), 3);
  if (!verify_ybe(st).holds) return fail("descended operator fails the YBE");
  if (st != r_from_central_leibniz(fundamental_leibniz(t3_bar())))
    return fail("descended operator differs from the fundamental-algebra operator");
  return {true, "lift matches formula, descent matches fundamental algebra"};
}

Outcome ac4() {
  const auto r2 = r2_from_nleibniz(t3());
  const auto via = lebed_operator(linear_rack_on_tensor_power(linear_nrack_from_nleibniz(t3()))).first;
  if (const auto diff = first_difference(r2, via)) return fail("differs at column " + std::to_string(*diff));
  return {true, std::to_string(r2.nnz()) + " entries agree"};
}

bool intertwines(const NLeibnizAlgebra& a) {
  const auto [eta, rep] = eta_intertwiner(a);
  if (!rep.passed()) return false;
  const Index p = eta.domain().total(), q = eta.codomain().total();
  const auto ee = tensor(eta, eta).reshaped(TensorShape({p * p}), TensorShape({q * q}));
  const auto r1 = r1_from_nleibniz(a).reshaped(TensorShape({p * p}), TensorShape({p * p}));
  const auto r2 = r2_from_nleibniz(a).reshaped(TensorShape({q * q}), TensorShape({q * q}));
  return compose(r2, ee) == compose(ee, r1);
}

Outcome ac5() {
  if (!intertwines(t3())) return fail("T3");
  std::mt19937 rng(777);
  std::size_t found = 0, tried = 0, nonzero = 0;
  while (found < 20) {
    if (++tried > 100000) return fail("sampler exhausted after " + std::to_string(found));
    const std::size_t d = 2 + tried % 2;
    NLeibnizAlgebra a(3, d);
    std::uniform_int_distribution<std::size_t> slot(0, d - 1), terms(1, 3);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (std::size_t t = terms(rng); t > 0; --t) {
      int c = 0;
      while (c == 0) c = coef(rng);
      a.add_bracket({slot(rng), slot(rng), slot(rng)}, slot(rng), Scalar(c));
    }
    if (!check_fundamental_identity(a).passed()) continue;
    a.set_certified(true);
    if (!intertwines(a)) return fail("random algebra " + std::to_string(found));
    ++found;
    nonzero += a.structure().nnz() > 0;
  }
  return {true, "T3 and 20 certified algebras (" + std::to_string(nonzero) + " nonzero)"};
}

Outcome ac6() {
  std::size_t racks2 = 0;
  for (std::size_t n : {2u, 3u}) {
    const std::size_t cells = n == 2 ? 4 : 8;
    for (std::size_t code = 0; code < (std::size_t{1} << cells); ++code) {
      const auto t = FiniteNRack::from_function(2, n, [&](const Tuple& x) {
        std::size_t flat = 0;
        for (auto xi : x) flat = flat * 2 + xi;
        return (code >> flat) & 1u;
      });
      const bool rack = check_nrack(t).passed();
      const bool sol = check_set_nsolution(solution_from_nrack(t)).is_solution(Side::right);
      if (rack != sol) return fail("disagreement at n=" + std::to_string(n) + " table " + std::to_string(code));
      if (n == 2) racks2 += rack;
    }
  }
  if (racks2 != 2) return fail("m=2,n=2 rack count " + std::to_string(racks2));
  if (enumerate_tables(2, 2, TableFilter::nrack).count != 2) return fail("census count");
  return {true, "272 tables agree, 2 binary racks"};
}

Outcome ac7() {
  const auto l = linearize_nrack(conjugation_nrack(FiniteGroup::symmetric(3), 3));
  const auto rep = check_linear_nrack(l);
  for (const char* name : {"bracket_coalgebra_map", "self_distributive", "inverse_law_inv_after_bracket",
                           "inverse_law_bracket_after_inv"})
    if (!rep.check_passed(name)) return fail(std::string("check ") + name);
  if (!rep.passed()) return fail("linear n-rack report");
  const auto yb = verify_nybe(nyb_from_linear_nrack(l).first, 3, Side::right);
  if (!yb.holds) return fail("3-YBE fails");
  if (yb.verification_dim != 7776) return fail("verification dim " + std::to_string(yb.verification_dim));
  return {true, "all checks pass, 3-YBE holds on 7776 dims"};
}

Outcome ac8() {
  const auto g = FiniteGroup::symmetric(3);
  const std::vector<std::pair<std::string, FiniteNRack>> racks{
      {"trivial", trivial_nrack(3, 2)}, {"flip", flip_rack()}, {"S3", conjugation_nrack(g, 2)}};
  for (const auto& [name, rack] : racks)
    if (nsolution_from_solution(solution_from_nrack(rack), 3) != solution_from_nrack(nrack_from_rack(rack, 3)))
      return fail("rack diagram on " + name);
  const std::vector<std::pair<std::string, FiniteNRack>> nracks{
      {"trivial", trivial_nrack(3, 3)}, {"flip", nrack_from_rack(flip_rack(), 3)}, {"S3", conjugation_nrack(g, 3)}};
  for (const auto& [name, t] : nracks)
    if (solution_from_nsolution(solution_from_nrack(t)) != solution_from_nrack(rack_from_nrack(t)))
      return fail("n-rack diagram on " + name);
  return {true, "both diagrams hold on 3 structures"};
}

Outcome ac9() {
  const auto r = nrack_from_nleibniz(t3(), ScalarMode::exact);
  const auto grid = sample_grid(3);
  const std::size_t g = grid.size();
  std::size_t points = 0;
  for (std::size_t y1 = 0; y1 < g; ++y1)
    for (std::size_t y2 = 0; y2 < g; ++y2) {
      const auto ty = r.translation({grid[y1], grid[y2]});
      for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
          for (std::size_t c = 0; c < g; ++c) {
            const Vector lhs = apply_map(ty, r({grid[a], grid[b], grid[c]}));
            const Vector rhs = r({apply_map(ty, grid[a]), apply_map(ty, grid[b]), apply_map(ty, grid[c])});
            if (!equal_vectors(lhs, rhs)) return fail("self-distributivity at a grid point");
            ++points;
          }
    }
  if (!check_vector_nrack(r).passed()) return fail("vector n-rack report");
  if (!verify_tensor_embedding(t3()).passed()) return fail("tensor embedding");
  return {true, std::to_string(points) + " grid points, embedding verified"};
}

Outcome ac10() {
  const auto f = exp_ad(non_nilpotent(), {basis_vector(2, 1)}, ScalarMode::float64);
  const double v = f.at(0, 0).to_double();
  const double err = std::fabs(v - std::exp(1.0));
  if (!(err < 1e-9)) return fail("entry " + std::to_string(v));
  char buf[64];
  std::snprintf(buf, sizeof buf, "entry %.12f, error %.1e", v, err);
  return {true, buf};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "fundamental identity iff n-YBE", 30, ac1},
      {2, "central operator on T3 bar", 10, ac2},
      {3, "lift and descend", 20, ac3},
      {4, "R2 coincidence", 20, ac4},
      {5, "eta intertwining", 30, ac5},
      {6, "rack/solution census on two points", 5, ac6},
      {7, "linear 3-rack of S3", 60, ac7},
      {8, "set-side diagrams", 5, ac8},
      {9, "vector 3-rack on the sample grid", 5, ac9},
      {10, "float exp sanity", 1, ac10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.ok && secs >= c.limit_s) out = fail("took " + std::to_string(secs) + " s");
    failures += !out.ok;
    std::printf("AC%-2d %s  %-38s %8.3f s / %4.0f s  %s\n", c.id, out.ok ? "PASS" : "FAIL", c.name, secs, c.limit_s,
                out.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
