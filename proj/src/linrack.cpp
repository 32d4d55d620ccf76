#include "braidforge/linrack.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "braidforge/error.hpp"
#include "braidforge/json_util.hpp"
#include "braidforge/parallel.hpp"

namespace braidforge {

namespace {

using Chain = std::function<void(SparseTensor&)>;

/// Compares two chains of factorwise operations on every basis tensor of
/// the given factor dimensions.
Check compare_chains(const std::string& name, const std::vector<std::size_t>& dims, const Chain& lhs,
                     const Chain& rhs) {
  const TensorShape shape(dims);
  return timed_check(name, [&]() -> std::optional<nlohmann::json> {
    auto differs = [&](Index i) {
      SparseTensor a = SparseTensor::basis(dims, i), b = SparseTensor::basis(dims, i);
      lhs(a);
      rhs(b);
      return !(a == b);
    };
    auto bad = parallel_first_failure(shape.total(), differs);
    if (!bad) return std::nullopt;
    SparseTensor a = SparseTensor::basis(dims, *bad), b = SparseTensor::basis(dims, *bad);
    lhs(a);
    rhs(b);
    return nlohmann::json{{"column", *bad},
                          {"tuple", shape.unflatten(*bad)},
                          {"lhs", sparse_to_json(a.entries())},
                          {"rhs", sparse_to_json(b.entries())}};
  });
}

TensorOperator reshape_unary(const TensorOperator& op, std::size_t c, std::size_t in_factors, std::size_t out_factors) {
  return op.reshaped(TensorShape::power(c, in_factors), TensorShape::power(c, out_factors));
}

}  // namespace

// ---------------------------------------------------------------------------
// Coalgebras

Coalgebra::Coalgebra(std::size_t dim, TensorOperator delta, TensorOperator epsilon) : dim_(dim) {
  if (delta.domain().total() != dim || delta.codomain().total() != Index{dim} * dim)
    throw Error(ErrorCode::shape_mismatch, "coproduct must map c to c⊗c");
  if (epsilon.domain().total() != dim || epsilon.codomain().total() != 1)
    throw Error(ErrorCode::shape_mismatch, "counit must map c to the ground field");
  delta_ = delta.reshaped(TensorShape({dim}), TensorShape({dim, dim}));
  epsilon_ = epsilon.reshaped(TensorShape({dim}), TensorShape({1}));
  cocommutative_ = compose(permutation_operator(TensorShape({dim, dim}), {1, 0}), delta_) == delta_;
}

VerificationReport check_coalgebra(const Coalgebra& c) {
  VerificationReport report;
  report.subject = "coalgebra";
  const std::vector<std::size_t> one{c.dim()};
  report.add(compare_chains(
      "coassociative", one,
      [&](SparseTensor& t) {
        t.apply_at(c.delta(), 0);
        t.apply_at(c.delta(), 0);
      },
      [&](SparseTensor& t) {
        t.apply_at(c.delta(), 0);
        t.apply_at(c.delta(), 1);
      }));
  report.add(compare_chains(
      "left_counit", one,
      [&](SparseTensor& t) {
        t.apply_at(c.delta(), 0);
        t.apply_at(c.epsilon(), 0);
      },
      [](SparseTensor&) {}));
  report.add(compare_chains(
      "right_counit", one,
      [&](SparseTensor& t) {
        t.apply_at(c.delta(), 0);
        t.apply_at(c.epsilon(), 1);
      },
      [](SparseTensor&) {}));
  Check cc;
  cc.name = "cocommutative";
  cc.status = c.cocommutative() ? CheckStatus::pass : CheckStatus::skipped;
  if (!c.cocommutative()) cc.note = "coproduct is not cocommutative";
  report.add(std::move(cc));
  return report;
}

Coalgebra linearize_set(std::size_t m) {
  TensorOperator delta(TensorShape({m}), TensorShape({m, m}));
  TensorOperator eps(TensorShape({m}), TensorShape({1}));
  for (std::size_t x = 0; x < m; ++x) {
    delta.add(x * m + x, x, Scalar(1));
    eps.add(0, x, Scalar(1));
  }
  return Coalgebra(m, std::move(delta), std::move(eps));
}

Coalgebra kplus_coalgebra(std::size_t d) {
  const std::size_t c = d + 1;
  TensorOperator delta(TensorShape({c}), TensorShape({c, c}));
  TensorOperator eps(TensorShape({c}), TensorShape({1}));
  delta.add(0, 0, Scalar(1));
  eps.add(0, 0, Scalar(1));
  for (std::size_t i = 1; i < c; ++i) {
    delta.add(i * c + 0, i, Scalar(1));
    delta.add(0 * c + i, i, Scalar(1));
  }
  return Coalgebra(c, std::move(delta), std::move(eps));
}

Coalgebra tensor_power(const Coalgebra& c, std::size_t k) {
  if (k == 1) return c;
  const std::size_t big = static_cast<std::size_t>(TensorShape::power(c.dim(), k).total());
  TensorOperator delta = compose(deal_permutation(k, c.dim()), tensor_power(c.delta(), k));
  TensorOperator eps = tensor_power(c.epsilon(), k);
  return Coalgebra(big, delta.reshaped(TensorShape({big}), TensorShape({big, big})),
                   eps.reshaped(TensorShape({big}), TensorShape({1})));
}

TensorOperator coproduct_power(const Coalgebra& c, std::size_t legs) {
  if (legs == 0) throw Error(ErrorCode::arity_mismatch, "coproduct power needs at least one leg");
  TensorOperator out = TensorOperator::identity(TensorShape({c.dim()}));
  for (std::size_t l = 1; l < legs; ++l) {
    // (Δ ⊗ Id^{l−1}) ∘ Δ^{(l)}
    TensorOperator step = tensor(c.delta(), TensorOperator::identity(TensorShape::power(c.dim(), l - 1)));
    out = compose(step.reshaped(TensorShape::power(c.dim(), l), TensorShape::power(c.dim(), l + 1)), out);
  }
  return out.reshaped(TensorShape({c.dim()}), TensorShape::power(c.dim(), legs));
}

// ---------------------------------------------------------------------------
// Linear n-racks

namespace {

void check_shapes(const LinearNRack& l) {
  const std::size_t c = l.base.dim();
  for (const auto* op : {&l.bracket, &l.inv_bracket})
    if (op->domain().total() != TensorShape::power(c, l.arity).total() || op->codomain().total() != c)
      throw Error(ErrorCode::shape_mismatch, "bracket must map c^n to c");
}

LinearNRack normalized(const LinearNRack& l) {
  check_shapes(l);
  LinearNRack out = l;
  const std::size_t c = l.base.dim();
  out.bracket = reshape_unary(l.bracket, c, l.arity, 1);
  out.inv_bracket = reshape_unary(l.inv_bracket, c, l.arity, 1);
  return out;
}

/// Coalgebra-map and counit checks for one bracket.
void coalgebra_map_checks(VerificationReport& report, const std::string& prefix, const Coalgebra& base,
                          const TensorOperator& br, std::size_t n) {
  const std::size_t c = base.dim();
  const std::vector<std::size_t> dims(n, c);
  report.add(compare_chains(
      prefix + "coalgebra_map", dims,
      [&](SparseTensor& t) {
        t.apply_at(br, 0);
        t.apply_at(base.delta(), 0);
      },
      [&](SparseTensor& t) {
        for (std::size_t i = n; i-- > 0;) t.apply_at(base.delta(), i);
        std::vector<std::size_t> perm(2 * n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t l = 0; l < 2; ++l) perm[i * 2 + l] = l * n + i;
        t.permute(perm);
        t.apply_at(br, 0);
        t.apply_at(br, 1);
      }));
  report.add(compare_chains(
      prefix + "counit", dims,
      [&](SparseTensor& t) {
        t.apply_at(br, 0);
        t.apply_at(base.epsilon(), 0);
      },
      [&](SparseTensor& t) {
        for (std::size_t i = 0; i < n; ++i) t.apply_at(base.epsilon(), i);
      }));
}

/// ⟨⟨u⟩, v⟩ = ⟨⟨u1, v^(1)⟩, …, ⟨un, v^(n)⟩⟩ on c^(2n−1).
Check self_distributive_check(const std::string& name, const Coalgebra& base, const TensorOperator& br,
                              std::size_t n) {
  const std::size_t c = base.dim();
  const TensorOperator legs = coproduct_power(base, n);
  return compare_chains(
      name, std::vector<std::size_t>(2 * n - 1, c),
      [&](SparseTensor& t) {
        t.apply_at(br, 0);
        t.apply_at(br, 0);
      },
      [&](SparseTensor& t) {
        // u1..un, v1..v_{n−1}  →  u1..un, v1^(1..n), …, v_{n−1}^(1..n)
        for (std::size_t j = n - 1; j-- > 0;) t.apply_at(legs, n + j);
        std::vector<std::size_t> perm(n + n * (n - 1));
        for (std::size_t i = 0; i < n; ++i) perm[i] = i * n;
        for (std::size_t j = 0; j + 1 < n; ++j)
          for (std::size_t l = 0; l < n; ++l) perm[n + j * n + l] = l * n + 1 + j;
        t.permute(perm);
        for (std::size_t i = 0; i < n; ++i) t.apply_at(br, i);
        t.apply_at(br, 0);
      });
}

/// outer(inner(u, v^(2)…), v_{n−1}^(1), …, v_1^(1)) = ε(v1)⋯ε(v_{n−1}) u.
Check inverse_law_check(const std::string& name, const Coalgebra& base, const TensorOperator& inner,
                        const TensorOperator& outer, std::size_t n) {
  const std::size_t c = base.dim();
  return compare_chains(
      name, std::vector<std::size_t>(n, c),
      [&](SparseTensor& t) {
        for (std::size_t j = n; j-- > 1;) t.apply_at(base.delta(), j);
        // u, v1^(1), v1^(2), v2^(1), v2^(2), …
        std::vector<std::size_t> perm(2 * n - 1);
        perm[0] = 0;
        for (std::size_t j = 1; j < n; ++j) {
          perm[1 + 2 * (j - 1)] = 2 * n - 1 - j;  // v_j^(1)
          perm[2 + 2 * (j - 1)] = j;              // v_j^(2)
        }
        t.permute(perm);
        t.apply_at(inner, 0);
        t.apply_at(outer, 0);
      },
      [&](SparseTensor& t) {
        for (std::size_t j = 1; j < n; ++j) t.apply_at(base.epsilon(), j);
      });
}

}  // namespace

VerificationReport check_linear_nrack(const LinearNRack& input) {
  const LinearNRack l = normalized(input);
  const std::size_t n = l.arity;
  VerificationReport report;
  report.subject = n == 2 ? "linear_rack" : "linear_nrack";
  report.append(check_coalgebra(l.base), "base.");
  coalgebra_map_checks(report, "bracket_", l.base, l.bracket, n);
  coalgebra_map_checks(report, "inv_bracket_", l.base, l.inv_bracket, n);
  report.add(self_distributive_check("self_distributive", l.base, l.bracket, n));
  report.add(self_distributive_check("inv_self_distributive", l.base, l.inv_bracket, n));
  report.add(inverse_law_check("inverse_law_inv_after_bracket", l.base, l.bracket, l.inv_bracket, n));
  report.add(inverse_law_check("inverse_law_bracket_after_inv", l.base, l.inv_bracket, l.bracket, n));
  return report;
}

void require_valid(const LinearNRack& l) {
  if (l.certified) return;
  auto report = check_linear_nrack(l);
  if (!report.passed()) {
    nlohmann::json w;
    for (const auto& c : report.checks)
      if (c.status == CheckStatus::fail) {
        w = {{"check", c.name}, {"witness", c.witness}};
        break;
      }
    throw Error(ErrorCode::input_invalid, "input fails the linear n-rack axioms", w);
  }
}

LinearNRack linearize_nrack(const FiniteNRack& t) {
  if (t.side() != Side::right) throw Error(ErrorCode::input_invalid, "expected a right n-rack");
  require_certified(t);
  const std::size_t m = t.size(), n = t.arity();
  const std::size_t ys = t.cells() / m;
  // inverse translations: inv[y][z] = x with ⟨x, y⟩ = z
  std::vector<std::vector<std::size_t>> inv(ys, std::vector<std::size_t>(m));
  for (std::size_t y = 0; y < ys; ++y)
    for (std::size_t x = 0; x < m; ++x) inv[y][t.at(x * ys + y)] = x;
  LinearNRack l;
  l.base = linearize_set(m);
  l.arity = n;
  l.bracket = TensorOperator(TensorShape::power(m, n), TensorShape({m}));
  l.inv_bracket = l.bracket;
  const TensorShape tail = TensorShape::power(m, n - 1);
  for (std::size_t c = 0; c < t.cells(); ++c) {
    l.bracket.add(t.at(c), c, Scalar(1));
    const std::size_t z = c / ys;
    Tuple w = tail.unflatten(c % ys);
    std::reverse(w.begin(), w.end());
    l.inv_bracket.add(inv[tail.flatten(w)][z], c, Scalar(1));
  }
  l.certified = true;
  return l;
}

std::vector<std::size_t> group_like_elements(const Coalgebra& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const SparseVector want{{Index{i} * c.dim() + i, Scalar(1)}};
    if (same_columns(c.delta().column(i), want) && same_columns(c.epsilon().column(i), {{0, Scalar(1)}}))
      out.push_back(i);
  }
  return out;
}

FiniteNRack induced_nrack(const LinearNRack& input) {
  const LinearNRack l = normalized(input);
  const auto g = group_like_elements(l.base);
  if (g.empty()) throw Error(ErrorCode::not_closed, "no group-like basis elements");
  std::vector<std::ptrdiff_t> position(l.base.dim(), -1);
  for (std::size_t i = 0; i < g.size(); ++i) position[g[i]] = static_cast<std::ptrdiff_t>(i);
  const TensorShape full = TensorShape::power(l.base.dim(), l.arity);
  return FiniteNRack::from_function(g.size(), l.arity, [&](const Tuple& x) -> std::size_t {
    Tuple lifted;
    for (auto xi : x) lifted.push_back(g[xi]);
    const auto& col = l.bracket.column(full.flatten(lifted));
    if (col.size() != 1 || col[0].second != Scalar(1) || position[col[0].first] < 0)
      throw Error(ErrorCode::not_closed, "bracket of group-like elements leaves the group-like set",
                  nlohmann::json{{"tuple", lifted}});
    return static_cast<std::size_t>(position[col[0].first]);
  });
}

LinearNRack linear_nrack_from_linear_rack(const LinearRack& r, std::size_t n) {
  if (r.arity != 2) throw Error(ErrorCode::arity_mismatch, "expected a linear rack");
  if (n < 2) throw Error(ErrorCode::arity_mismatch, "target arity must be at least 2");
  require_valid(r);
  const LinearRack base = normalized(r);
  const std::size_t c = base.base.dim();
  auto fold = [&](const TensorOperator& op) {
    TensorOperator acc = op;
    for (std::size_t k = 3; k <= n; ++k)
      acc = compose(op, tensor(acc, TensorOperator::identity(TensorShape({c}))));
    return acc;
  };
  LinearNRack out;
  out.base = base.base;
  out.arity = n;
  out.bracket = fold(base.bracket);
  out.inv_bracket = fold(base.inv_bracket);
  out.certified = true;
  return out;
}

LinearRack linear_rack_on_tensor_power(const LinearNRack& input) {
  const LinearNRack l = normalized(input);
  if (!l.base.cocommutative()) throw Error(ErrorCode::not_cocommutative, "base coalgebra is not cocommutative");
  const std::size_t n = l.arity, k = n - 1, c = l.base.dim();
  if (k == 1) return l;
  const TensorOperator legs = coproduct_power(l.base, k);
  const std::vector<std::size_t> dims(2 * k, c);
  auto build = [&](const TensorOperator& br, bool reverse_v) {
    const TensorShape domain(dims);
    TensorOperator op(domain, TensorShape::power(c, k));
    for (Index col = 0; col < domain.total(); ++col) {
      SparseTensor t = SparseTensor::basis(dims, col);
      for (std::size_t j = k; j-- > 0;) t.apply_at(legs, k + j);
      std::vector<std::size_t> perm(k + k * k);
      for (std::size_t i = 0; i < k; ++i) perm[i] = i * n;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l2 = 0; l2 < k; ++l2) perm[k + j * k + l2] = l2 * n + 1 + (reverse_v ? k - 1 - j : j);
      t.permute(perm);
      for (std::size_t i = 0; i < k; ++i) t.apply_at(br, i);
      op.set_column(col, t.entries());
    }
    const std::size_t big = static_cast<std::size_t>(TensorShape::power(c, k).total());
    return op.reshaped(TensorShape({big, big}), TensorShape({big}));
  };
  LinearRack out;
  out.base = tensor_power(l.base, k);
  out.arity = 2;
  out.bracket = build(l.bracket, false);
  out.inv_bracket = build(l.inv_bracket, true);
  out.certified = l.certified;
  return out;
}

LinearNRack linear_nrack_from_nleibniz(const NLeibnizAlgebra& a) {
  require_certified(a);
  const std::size_t d = a.dim(), n = a.arity(), c = d + 1;
  LinearNRack l;
  l.base = kplus_coalgebra(d);
  l.arity = n;
  const TensorShape shape = TensorShape::power(c, n);
  l.bracket = TensorOperator(shape, TensorShape({c}));
  l.inv_bracket = l.bracket;
  for (Index col = 0; col < shape.total(); ++col) {
    const Tuple x = shape.unflatten(col);
    const bool tail_units = std::all_of(x.begin() + 1, x.end(), [](std::size_t v) { return v == 0; });
    const bool all_vectors = std::all_of(x.begin(), x.end(), [](std::size_t v) { return v != 0; });
    if (tail_units) {
      // λ1⋯λn on (1,0) and λ2⋯λn x1 on the vector part
      l.bracket.add(x[0], col, Scalar(1));
      l.inv_bracket.add(x[0], col, Scalar(1));
    }
    if (all_vectors) {
      Tuple inner(n), rev(n);
      for (std::size_t i = 0; i < n; ++i) inner[i] = x[i] - 1;
      rev[0] = inner[0];
      for (std::size_t i = 1; i < n; ++i) rev[i] = inner[n - i];
      for (const auto& [j, v] : a.bracket_sparse(inner)) l.bracket.add(j + 1, col, v);
      for (const auto& [j, v] : a.bracket_sparse(rev)) l.inv_bracket.add(j + 1, col, -v);
    }
  }
  l.certified = true;
  return l;
}

std::pair<TensorOperator, TensorOperator> lebed_operator(const LinearRack& input) {
  if (input.arity != 2) throw Error(ErrorCode::arity_mismatch, "expected a linear rack");
  const LinearRack r = normalized(input);
  if (!r.base.cocommutative()) throw Error(ErrorCode::not_cocommutative, "base coalgebra is not cocommutative");
  const std::size_t c = r.base.dim();
  const std::vector<std::size_t> dims{c, c};
  const TensorShape shape(dims);
  TensorOperator fwd(shape, shape), bwd(shape, shape);
  for (Index col = 0; col < shape.total(); ++col) {
    SparseTensor t = SparseTensor::basis(dims, col);
    t.apply_at(r.base.delta(), 1);  // u, v1, v2
    t.permute({1, 0, 2});           // v1, u, v2
    t.apply_at(r.bracket, 1);
    fwd.set_column(col, t.entries());

    SparseTensor s = SparseTensor::basis(dims, col);
    s.apply_at(r.base.delta(), 0);  // u1, u2, v
    s.permute({2, 1, 0});           // v, u2, u1
    s.apply_at(r.inv_bracket, 0);
    bwd.set_column(col, s.entries());
  }
  const TensorOperator id = TensorOperator::identity(shape);
  if (auto col = first_difference(compose(fwd, bwd), id))
    throw Error(ErrorCode::inverse_mismatch, "operator and displayed inverse do not compose to the identity",
                nlohmann::json{{"column", *col}});
  if (auto col = first_difference(compose(bwd, fwd), id))
    throw Error(ErrorCode::inverse_mismatch, "displayed inverse and operator do not compose to the identity",
                nlohmann::json{{"column", *col}});
  return {fwd, bwd};
}

TensorOperator tensor_power_yb_operator(const LinearNRack& input) {
  const LinearNRack l = normalized(input);
  if (!l.base.cocommutative()) throw Error(ErrorCode::not_cocommutative, "base coalgebra is not cocommutative");
  const std::size_t n = l.arity, k = n - 1, c = l.base.dim();
  const TensorOperator legs = coproduct_power(l.base, n);
  const std::vector<std::size_t> dims(2 * k, c);
  const TensorShape domain(dims);
  TensorOperator op(domain, domain);
  for (Index col = 0; col < domain.total(); ++col) {
    SparseTensor t = SparseTensor::basis(dims, col);
    for (std::size_t j = k; j-- > 0;) t.apply_at(legs, k + j);
    // u1..uk, v_j^(l) at k + j·n + l
    std::vector<std::size_t> perm(k + k * n);
    for (std::size_t i = 0; i < k; ++i) perm[i] = k + i * n;
    for (std::size_t j = 0; j < k; ++j) {
      perm[k + j * n] = j;
      for (std::size_t l2 = 1; l2 < n; ++l2) perm[k + j * n + l2] = k + (l2 - 1) * n + 1 + j;
    }
    t.permute(perm);
    for (std::size_t i = 0; i < k; ++i) t.apply_at(l.bracket, k + i);
    op.set_column(col, t.entries());
  }
  const std::size_t big = static_cast<std::size_t>(TensorShape::power(c, k).total());
  return op.reshaped(TensorShape({big, big}), TensorShape({big, big}));
}

VerificationReport is_linear_rack_homomorphism(const TensorOperator& f, const LinearRack& a_in,
                                               const LinearRack& b_in) {
  const LinearRack a = normalized(a_in), b = normalized(b_in);
  if (a.arity != 2 || b.arity != 2) throw Error(ErrorCode::arity_mismatch, "expected linear racks");
  const std::size_t ca = a.base.dim(), cb = b.base.dim();
  if (f.domain().total() != ca || f.codomain().total() != cb)
    throw Error(ErrorCode::shape_mismatch, "map dimensions do not match the racks");
  const TensorOperator g = f.reshaped(TensorShape({ca}), TensorShape({cb}));
  const TensorOperator gg = tensor(g, g);
  VerificationReport report;
  report.subject = "linear_rack_homomorphism";
  auto compare = [&](const std::string& name, const TensorOperator& l, const TensorOperator& r) {
    report.add(timed_check(name, [&]() -> std::optional<nlohmann::json> {
      if (auto col = first_difference(l, r)) return nlohmann::json{{"column", *col}};
      return std::nullopt;
    }));
  };
  compare("coproduct", compose(b.base.delta(), g), compose(gg, a.base.delta()));
  compare("counit", compose(b.base.epsilon(), g), a.base.epsilon());
  compare("bracket", compose(g, a.bracket), compose(b.bracket, gg));
  compare("inv_bracket", compose(g, a.inv_bracket), compose(b.inv_bracket, gg));
  return report;
}

TensorOperator psi_map(std::size_t m, std::size_t n) {
  const std::size_t big = static_cast<std::size_t>(TensorShape::power(m, n - 1).total());
  return TensorOperator::identity(TensorShape({big}));
}

}  // namespace braidforge
