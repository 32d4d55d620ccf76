#include <map>

#include "braidforge/error.hpp"
#include "braidforge/json_util.hpp"
#include "braidforge/nrack.hpp"
#include "braidforge/parallel.hpp"

namespace braidforge {

VectorNRack::VectorNRack(NLeibnizAlgebra algebra, ScalarMode mode) : algebra_(std::move(algebra)), mode_(mode) {}

TensorOperator VectorNRack::translation(const std::vector<Vector>& y) const { return exp_ad(algebra_, y, mode_); }

Vector VectorNRack::operator()(const std::vector<Vector>& x) const {
  if (x.size() != algebra_.arity()) throw Error(ErrorCode::arity_mismatch, "wrong number of arguments");
  return apply_map(translation(std::vector<Vector>(x.begin() + 1, x.end())), x[0]);
}

std::vector<Vector> sample_grid(std::size_t d, ScalarMode mode) {
  std::vector<Vector> grid;
  for (std::size_t i = 0; i < d; ++i) grid.push_back(basis_vector(d, i, mode));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Vector v = basis_vector(d, i, mode);
      v[j] = Scalar::one(mode);
      grid.push_back(std::move(v));
    }
  return grid;
}

namespace {

std::vector<Vector> pick(const std::vector<Vector>& grid, const Tuple& idx, std::size_t from, std::size_t to) {
  std::vector<Vector> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(grid[idx[i]]);
  return out;
}

bool evaluation_failure(const Error& e) {
  return e.code() == ErrorCode::not_nilpotent || e.code() == ErrorCode::series_not_converged;
}

}  // namespace

VerificationReport check_vector_nrack(const VectorNRack& r) {
  const NLeibnizAlgebra& a = r.algebra();
  const std::size_t n = a.arity(), d = a.dim();
  const auto grid = sample_grid(d, r.mode());
  VerificationReport report;
  report.subject = "vector_nrack";

  // Translations at grid tuples, cached by index.
  const TensorShape ys = TensorShape::power(grid.size(), n - 1);
  std::vector<std::optional<TensorOperator>> cache(ys.total());
  std::size_t skipped = 0;
  for (Index yi = 0; yi < ys.total(); ++yi) {
    try {
      cache[yi] = r.translation(pick(grid, ys.unflatten(yi), 0, n - 1));
    } catch (const Error& e) {
      if (!evaluation_failure(e)) throw;
    }
  }

  const TensorShape tuples = TensorShape::power(grid.size(), 2 * n - 1);
  Check sd;
  sd.name = "self_distributive_on_grid";
  {
    Stopwatch sw;
    for (Index i = 0; i < tuples.total(); ++i) {
      const Tuple idx = tuples.unflatten(i);
      const Tuple yidx(idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end());
      const auto& ty = cache[ys.flatten(yidx)];
      if (!ty) {
        ++skipped;
        continue;
      }
      try {
        const auto x = pick(grid, idx, 0, n);
        const Vector lhs = apply_map(*ty, r(x));
        std::vector<Vector> moved;
        for (const auto& xi : x) moved.push_back(apply_map(*ty, xi));
        const Vector rhs = r(moved);
        if (!equal_vectors(lhs, rhs)) {
          sd.status = CheckStatus::fail;
          sd.witness = {{"grid_tuple", idx}, {"lhs", vector_to_json(lhs)}, {"rhs", vector_to_json(rhs)}};
          break;
        }
      } catch (const Error& e) {
        if (!evaluation_failure(e)) throw;
        ++skipped;
      }
    }
    sd.elapsed_ms = sw.elapsed_ms();
    sd.note = "grid points: " + std::to_string(grid.size()) + ", tuples skipped: " + std::to_string(skipped);
  }
  report.add(std::move(sd));

  report.add(timed_check("translations_invertible_on_grid", [&]() -> std::optional<nlohmann::json> {
    for (Index yi = 0; yi < ys.total(); ++yi) {
      if (!cache[yi]) continue;
      auto y = pick(grid, ys.unflatten(yi), 0, n - 1);
      y[0] = [&] {
        Vector neg = y[0];
        for (auto& v : neg) v = -v;
        return neg;
      }();
      const TensorOperator inv = r.translation(y);
      if (compose(inv, *cache[yi]) != TensorOperator::identity(TensorShape({d}), r.mode()))
        return nlohmann::json{{"grid_tuple", ys.unflatten(yi)}};
    }
    return std::nullopt;
  }));
  return report;
}

VectorNRack nrack_from_nleibniz(const NLeibnizAlgebra& a, ScalarMode mode) {
  if (mode == ScalarMode::exact) {
    const TensorShape ys = TensorShape::power(a.dim(), a.arity() - 1);
    for (Index yi = 0; yi < ys.total(); ++yi) {
      const Tuple y = ys.unflatten(yi);
      try {
        exp_map(ad_basis(a, y), ScalarMode::exact);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::not_nilpotent)
          throw Error(ErrorCode::not_nilpotent, "basis adjoint is not nilpotent", nlohmann::json{{"y", y}});
        throw;
      }
    }
  }
  VectorNRack r(a, mode);
  r.set_validation(check_vector_nrack(r));
  return r;
}

namespace {

Vector kron(const std::vector<Vector>& vs) {
  Vector out{Scalar::one(vs.front().front().mode())};
  for (const auto& v : vs) {
    Vector next;
    next.reserve(out.size() * v.size());
    for (const auto& a : out)
      for (const auto& b : v) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

void compositions(std::size_t k, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 1) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t i = 0; i <= k; ++i) {
    cur.push_back(i);
    compositions(k - i, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

VerificationReport verify_tensor_embedding(const NLeibnizAlgebra& a, std::size_t max_power) {
  require_certified(a);
  const std::size_t n = a.arity(), d = a.dim(), b = n - 1;
  const ScalarMode mode = a.mode();
  const NLeibnizAlgebra fund = fundamental_leibniz(a);
  const auto grid = sample_grid(d, mode);
  const TensorShape blocks = TensorShape::power(grid.size(), b);
  VerificationReport report;
  report.subject = "tensor_embedding";

  std::vector<TensorOperator> exps(blocks.total());
  std::vector<TensorOperator> fund_exps(blocks.total());
  for (Index yi = 0; yi < blocks.total(); ++yi) {
    const auto y = pick(grid, blocks.unflatten(yi), 0, b);
    exps[yi] = exp_ad(a, y, mode);
    fund_exps[yi] = exp_ad(fund, {kron(y)}, mode);
  }

  auto sides = [&](Index pair) {
    const Index xi = pair / blocks.total(), yi = pair % blocks.total();
    const auto x = pick(grid, blocks.unflatten(xi), 0, b);
    std::vector<Vector> moved;
    for (const auto& v : x) moved.push_back(apply_map(exps[yi], v));
    return std::make_pair(kron(moved), apply_map(fund_exps[yi], kron(x)));
  };
  report.add(timed_check("embedding_homomorphism", [&]() -> std::optional<nlohmann::json> {
    auto bad = parallel_first_failure(blocks.total() * blocks.total(), [&](Index p) {
      auto [l, r] = sides(p);
      return !equal_vectors(l, r);
    });
    if (!bad) return std::nullopt;
    auto [l, r] = sides(*bad);
    return nlohmann::json{{"x_grid", blocks.unflatten(*bad / blocks.total())},
                          {"y_grid", blocks.unflatten(*bad % blocks.total())},
                          {"lhs", vector_to_json(l)},
                          {"rhs", vector_to_json(r)}};
  }));

  report.add(timed_check("ad_power_identity", [&]() -> std::optional<nlohmann::json> {
    for (Index yi = 0; yi < blocks.total(); ++yi) {
      const auto y = pick(grid, blocks.unflatten(yi), 0, b);
      const TensorOperator small = ad(a, y);
      const TensorOperator big = ad(fund, {kron(y)});
      std::vector<TensorOperator> small_pows{TensorOperator::identity(TensorShape({d}), mode)};
      TensorOperator big_pow = TensorOperator::identity(big.domain(), mode);
      for (std::size_t k = 1; k <= max_power; ++k) {
        small_pows.push_back(compose(small, small_pows.back()));
        big_pow = compose(big, big_pow);
        std::vector<std::vector<std::size_t>> parts;
        std::vector<std::size_t> cur;
        compositions(k, b, cur, parts);
        TensorOperator sum(big.domain(), big.codomain());
        for (const auto& p : parts) {
          // multinomial k! / (k1! ⋯ kb!)
          mpz_class coeff;
          mpz_fac_ui(coeff.get_mpz_t(), k);
          for (auto ki : p) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), ki);
            coeff /= f;
          }
          TensorOperator term = small_pows[p[0]];
          for (std::size_t i = 1; i < b; ++i) term = tensor(term, small_pows[p[i]]);
          const Scalar c = Scalar(mpq_class(coeff)).to_mode(mode);
          for (const auto& [r, col, v] : term.entries()) sum.add(r, col, c * v);
        }
        if (auto col = first_difference(sum.reshaped(big.domain(), big.codomain()), big_pow))
          return nlohmann::json{{"y_grid", blocks.unflatten(yi)}, {"power", k}, {"column", *col}};
      }
    }
    return std::nullopt;
  }));
  return report;
}

}  // namespace braidforge
