#include "braidforge/ybops.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "braidforge/error.hpp"
#include "braidforge/json_util.hpp"
#include "braidforge/parallel.hpp"

namespace braidforge {

namespace {

Index initial_cap() {
  if (const char* env = std::getenv("BRAIDFORGE_DIM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return Index{1} << 20;
}

std::atomic<Index>& cap_storage() {
  static std::atomic<Index> cap{initial_cap()};
  return cap;
}

/// d^k, saturating at 2^63.
Index saturating_power(std::size_t d, std::size_t k) {
  constexpr Index kLimit = Index{1} << 63;
  Index out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (d != 0 && out > kLimit / d) return kLimit;
    out *= d;
  }
  return out;
}

SparseVector vector_power(const Vector& v, std::size_t k) {
  SparseVector out{{0, Scalar(1)}};
  const std::size_t d = v.size();
  for (std::size_t step = 0; step < k; ++step) {
    SparseVector next;
    for (const auto& [i, x] : out)
      for (std::size_t j = 0; j < d; ++j)
        if (!v[j].is_literal_zero()) next.emplace_back(i * d + j, x * v[j]);
    normalize(next);
    out = std::move(next);
  }
  return out;
}

/// R(x⊗y) = y⊗x + 𝟏⊗{x,y} for a binary bracket, without precondition checks.
TensorOperator lebed_unchecked(const NLeibnizAlgebra& a, const Vector& one) {
  const std::size_t d = a.dim();
  const TensorShape shape({d, d});
  TensorOperator r(shape, shape);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Index col = i * d + j;
      SparseVector v{{Index{j} * d + i, Scalar::one(a.mode())}};
      for (const auto& [l, c] : a.bracket_sparse({i, j}))
        for (std::size_t k = 0; k < d; ++k)
          if (!one[k].is_literal_zero()) v.emplace_back(Index{k} * d + l, one[k] * c);
      normalize(v);
      r.set_column(col, std::move(v));
    }
  return r;
}

TensorOperator central_nyb_unchecked(const NLeibnizAlgebra& a, const Vector& one, Side side) {
  const std::size_t d = a.dim(), n = a.arity();
  const TensorShape shape = TensorShape::power(d, n);
  const SparseVector ones = vector_power(one, n - 1);
  const Index block = saturating_power(d, n - 1);
  TensorOperator s(shape, shape);
  for (Index col = 0; col < shape.total(); ++col) {
    const Tuple x = shape.unflatten(col);
    Tuple moved(n);
    if (side == Side::right) {
      for (std::size_t i = 0; i + 1 < n; ++i) moved[i] = x[i + 1];
      moved[n - 1] = x[0];
    } else {
      moved[0] = x[n - 1];
      for (std::size_t i = 1; i < n; ++i) moved[i] = x[i - 1];
    }
    SparseVector v{{shape.flatten(moved), Scalar::one(a.mode())}};
    for (const auto& [l, c] : a.bracket_sparse(x))
      for (const auto& [u, w] : ones)
        v.emplace_back(side == Side::right ? u * d + l : Index{l} * block + u, w * c);
    normalize(v);
    s.set_column(col, std::move(v));
  }
  return s;
}

/// k⊕L with the bracket moved to indices 1..d and no certification.
NLeibnizAlgebra unit_extension(const NLeibnizAlgebra& a) {
  NLeibnizAlgebra bar(a.arity(), a.dim() + 1, a.mode());
  for (const auto& [in, out] : a.nonzero_brackets()) {
    Tuple shifted = in;
    for (auto& i : shifted) ++i;
    for (const auto& [j, c] : out) bar.add_bracket(shifted, j + 1, c);
  }
  return bar;
}

std::vector<std::size_t> right_chain(std::size_t n, bool lhs) {
  std::vector<std::size_t> out;
  if (lhs) {
    out.push_back(0);
    for (std::size_t p = n; p-- > 0;) out.push_back(p);
  } else {
    for (std::size_t p = n; p-- > 0;) out.push_back(p);
    out.push_back(n - 1);
  }
  return out;
}

std::vector<std::size_t> left_chain(std::size_t n, bool lhs) {
  std::vector<std::size_t> out;
  if (lhs) {
    for (std::size_t p = 0; p < n; ++p) out.push_back(p);
    out.push_back(0);
  } else {
    out.push_back(n - 1);
    for (std::size_t p = 0; p < n; ++p) out.push_back(p);
  }
  return out;
}

YBReport verify_chain(const TensorOperator& s, std::size_t n, YBEquation eq, Side side, bool allow_large) {
  Stopwatch sw;
  if (n < 2) throw Error(ErrorCode::arity_mismatch, "arity must be at least 2");
  const std::size_t d = factor_dim(s, n);
  const Index vdim = saturating_power(d, 2 * n - 1);
  if (vdim > dimension_cap() && !allow_large)
    throw Error(ErrorCode::dimension_cap_exceeded, "verification dimension exceeds the cap",
                nlohmann::json{{"verification_dim", vdim}, {"cap", dimension_cap()}});
  const TensorOperator op = s.reshaped(TensorShape::power(d, n), TensorShape::power(d, n));
  const std::vector<std::size_t> dims(2 * n - 1, d);
  const TensorShape full(dims);
  const auto lhs = side == Side::right ? right_chain(n, true) : left_chain(n, true);
  const auto rhs = side == Side::right ? right_chain(n, false) : left_chain(n, false);
  auto run = [&](const std::vector<std::size_t>& chain, Index col) {
    SparseTensor t = SparseTensor::basis(dims, col);
    for (auto p : chain) t.apply_at(op, p);
    return t;
  };
  YBReport report;
  report.equation = eq;
  report.n = n;
  report.dim = d;
  report.nonzeros = op.nnz();
  report.verification_dim = full.total();
  const auto bad = parallel_first_failure(full.total(), [&](Index col) { return !(run(lhs, col) == run(rhs, col)); });
  report.holds = !bad.has_value();
  if (bad) {
    report.witness = *bad;
    report.witness_detail = {{"tuple", full.unflatten(*bad)},
                             {"lhs", sparse_to_json(run(lhs, *bad).entries())},
                             {"rhs", sparse_to_json(run(rhs, *bad).entries())}};
  }
  try {
    invert(op);
    report.invertible = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix) throw;
    report.invertible = false;
  }
  report.elapsed_ms = sw.elapsed_ms();
  return report;
}

}  // namespace

Index dimension_cap() { return cap_storage().load(); }
void set_dimension_cap(Index cap) { cap_storage().store(cap); }

std::size_t factor_dim(const TensorOperator& op, std::size_t n) {
  if (op.domain().total() != op.codomain().total())
    throw Error(ErrorCode::shape_mismatch, "operator is not square");
  const Index total = op.domain().total();
  const auto& dims = op.domain().dims();
  if (dims.size() == n) {
    bool equal = true;
    for (auto x : dims) equal = equal && x == dims.front();
    if (equal) return dims.front();
  }
  const auto guess = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(total), 1.0 / n)));
  for (std::size_t d = guess > 1 ? guess - 1 : 1; d <= guess + 1; ++d)
    if (saturating_power(d, n) == total) return d;
  throw Error(ErrorCode::shape_mismatch, "operator dimension is not an n-th power",
              nlohmann::json{{"total", total}, {"n", n}});
}

YBReport verify_ybe(const TensorOperator& r, bool allow_large) {
  return verify_chain(r, 2, YBEquation::ybe, Side::right, allow_large);
}

YBReport verify_nybe(const TensorOperator& s, std::size_t n, Side side, bool allow_large) {
  return verify_chain(s, n, side == Side::right ? YBEquation::nybe_right : YBEquation::nybe_left, side, allow_large);
}

TensorOperator reverse_conjugate(const TensorOperator& s, std::size_t n) {
  const std::size_t d = factor_dim(s, n);
  const TensorOperator tau = reverse_operator(d, n);
  const TensorOperator op = s.reshaped(TensorShape::power(d, n), TensorShape::power(d, n));
  return compose(tau, compose(op, tau));
}

TensorOperator r_from_central_leibniz(const CentralNLeibnizAlgebra& cl) {
  if (cl.algebra.arity() != 2) throw Error(ErrorCode::arity_mismatch, "expected a central Leibniz algebra");
  require_certified(cl.algebra);
  require_central(cl);
  return lebed_unchecked(cl.algebra, cl.central);
}

IffResult r_tilde_iff_leibniz(const NLeibnizAlgebra& bracket) {
  if (bracket.arity() != 2) throw Error(ErrorCode::arity_mismatch, "expected a binary bracket");
  const NLeibnizAlgebra bar = unit_extension(bracket);
  IffResult out;
  out.op = lebed_unchecked(bar, basis_vector(bar.dim(), 0, bar.mode()));
  out.yb = verify_ybe(out.op);
  out.identity = check_fundamental_identity(bracket);
  if (out.yb.holds != out.identity.passed())
    throw Error(ErrorCode::verdict_disagreement, "Yang-Baxter verdict and Leibniz verdict differ",
                nlohmann::json{{"ybe", out.yb.to_json()}, {"leibniz", out.identity.to_json()}});
  return out;
}

TensorOperator r1_from_nleibniz(const NLeibnizAlgebra& a) {
  require_certified(a);
  const CentralNLeibnizAlgebra c = adjoin_unit(fundamental_leibniz(a));
  return lebed_unchecked(c.algebra, c.central);
}

TensorOperator r2_from_nleibniz(const NLeibnizAlgebra& a) {
  require_certified(a);
  const CentralNLeibnizAlgebra c = fundamental_leibniz(adjoin_unit(a));
  const TensorOperator r = lebed_unchecked(c.algebra, c.central);
  const std::size_t n = a.arity(), d = a.dim() + 1;
  return r.reshaped(TensorShape::power(d, 2 * (n - 1)), TensorShape::power(d, 2 * (n - 1)));
}

std::pair<TensorOperator, VerificationReport> eta_intertwiner(const NLeibnizAlgebra& a) {
  require_certified(a);
  const std::size_t n = a.arity(), d = a.dim(), k = n - 1;
  const CentralNLeibnizAlgebra f1 = adjoin_unit(fundamental_leibniz(a));
  const CentralNLeibnizAlgebra f2 = fundamental_leibniz(adjoin_unit(a));
  const std::size_t d1 = f1.algebra.dim(), d2 = f2.algebra.dim();
  const TensorShape small = TensorShape::power(d, k), big = TensorShape::power(d + 1, k);

  TensorOperator eta(TensorShape({d1}), TensorShape({d2}));
  eta.add(0, 0, Scalar(1));
  for (Index xi = 0; xi < small.total(); ++xi) {
    Tuple x = small.unflatten(xi);
    for (auto& v : x) ++v;
    eta.add(big.flatten(x), xi + 1, Scalar(1));
  }

  VerificationReport report;
  report.subject = "eta_intertwiner";
  report.add(timed_check("injective", [&]() -> std::optional<nlohmann::json> {
    DenseMatrix m(d2, Vector(d1, Scalar(0)));
    for (const auto& [r, c, v] : eta.entries()) m[r][c] = v;
    const std::size_t rk = rank(m, d1);
    if (rk == d1) return std::nullopt;
    return nlohmann::json{{"rank", rk}, {"columns", d1}};
  }));
  report.add(timed_check("central_element_preserved", [&]() -> std::optional<nlohmann::json> {
    const Vector image = apply_map(eta, f1.central);
    if (equal_vectors(image, f2.central)) return std::nullopt;
    return nlohmann::json{{"image", vector_to_json(image)}, {"expected", vector_to_json(f2.central)}};
  }));
  const TensorOperator eta2 = tensor(eta, eta);
  report.add(timed_check("bracket_preserved", [&]() -> std::optional<nlohmann::json> {
    const TensorOperator lhs = compose(eta, f1.algebra.structure());
    const TensorOperator rhs = compose(f2.algebra.structure(), eta2);
    if (auto col = first_difference(lhs, rhs)) return nlohmann::json{{"column", *col}};
    return std::nullopt;
  }));
  const TensorOperator r1 = lebed_unchecked(f1.algebra, f1.central);
  const TensorOperator r2 = lebed_unchecked(f2.algebra, f2.central);
  report.add(timed_check("intertwining", [&]() -> std::optional<nlohmann::json> {
    if (auto col = first_difference(compose(r2, eta2), compose(eta2, r1))) return nlohmann::json{{"column", *col}};
    return std::nullopt;
  }));
  return {eta.reshaped(TensorShape({d1}), big), report};
}

TensorOperator nyb_from_central_nleibniz(const CentralNLeibnizAlgebra& cl, Side side) {
  require_certified(side == Side::right ? cl.algebra : reversed(cl.algebra));
  require_central(cl);
  return central_nyb_unchecked(cl.algebra, cl.central, side);
}

TensorOperator nyb_inverse_from_central_nleibniz(const CentralNLeibnizAlgebra& cl) {
  require_central(cl);
  const NLeibnizAlgebra& a = cl.algebra;
  const std::size_t d = a.dim(), n = a.arity();
  const TensorShape shape = TensorShape::power(d, n);
  const SparseVector ones = vector_power(cl.central, n - 1);
  const Index block = saturating_power(d, n - 1);
  TensorOperator s(shape, shape);
  for (Index col = 0; col < shape.total(); ++col) {
    const Tuple x = shape.unflatten(col);
    Tuple rotated(n);
    rotated[0] = x[n - 1];
    for (std::size_t i = 1; i < n; ++i) rotated[i] = x[i - 1];
    SparseVector v{{shape.flatten(rotated), Scalar::one(a.mode())}};
    for (const auto& [l, c] : a.bracket_sparse(rotated))
      for (const auto& [u, w] : ones) v.emplace_back(Index{l} * block + u, -(w * c));
    normalize(v);
    s.set_column(col, std::move(v));
  }
  return s;
}

IffResult nyb_iff_nleibniz(const NLeibnizAlgebra& bracket) {
  const NLeibnizAlgebra bar = unit_extension(bracket);
  IffResult out;
  out.op = central_nyb_unchecked(bar, basis_vector(bar.dim(), 0, bar.mode()), Side::right);
  out.yb = verify_nybe(out.op, bracket.arity(), Side::right);
  out.identity = check_fundamental_identity(bracket);
  if (out.yb.holds != out.identity.passed())
    throw Error(ErrorCode::verdict_disagreement, "n-Yang-Baxter verdict and fundamental-identity verdict differ",
                nlohmann::json{{"nybe", out.yb.to_json()}, {"identity", out.identity.to_json()}});
  return out;
}

std::pair<TensorOperator, TensorOperator> nyb_from_linear_nrack(const LinearNRack& l) {
  if (!l.base.cocommutative()) throw Error(ErrorCode::not_cocommutative, "base coalgebra is not cocommutative");
  require_valid(l);
  const std::size_t n = l.arity, c = l.base.dim();
  const TensorOperator br = l.bracket.reshaped(TensorShape::power(c, n), TensorShape({c}));
  const TensorOperator inv = l.inv_bracket.reshaped(TensorShape::power(c, n), TensorShape({c}));
  const std::vector<std::size_t> dims(n, c);
  const TensorShape shape(dims);
  TensorOperator fwd(shape, shape), bwd(shape, shape);
  for (Index col = 0; col < shape.total(); ++col) {
    SparseTensor t = SparseTensor::basis(dims, col);
    for (std::size_t i = n; i-- > 1;) t.apply_at(l.base.delta(), i);
    // u1, u2^(1), u2^(2), …, un^(1), un^(2)
    std::vector<std::size_t> perm(2 * n - 1);
    perm[0] = n - 1;
    for (std::size_t i = 1; i < n; ++i) {
      perm[2 * i - 1] = i - 1;
      perm[2 * i] = n - 1 + i;
    }
    t.permute(perm);
    t.apply_at(br, n - 1);
    fwd.set_column(col, t.entries());

    SparseTensor s = SparseTensor::basis(dims, col);
    for (std::size_t i = n - 1; i-- > 0;) s.apply_at(l.base.delta(), i);
    // u1^(1), u1^(2), …, u_{n−1}^(1), u_{n−1}^(2), un
    std::vector<std::size_t> back(2 * n - 1);
    back[2 * (n - 1)] = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      back[2 * i] = n + i;
      back[2 * i + 1] = n - 1 - i;
    }
    s.permute(back);
    s.apply_at(inv, 0);
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

TensorOperator nyb_from_ybe(const TensorOperator& r, std::size_t n, bool check_input) {
  if (n < 2) throw Error(ErrorCode::arity_mismatch, "arity must be at least 2");
  const std::size_t d = factor_dim(r, 2);
  if (check_input) {
    const YBReport rep = verify_ybe(r);
    if (!rep.holds || !rep.invertible)
      throw Error(ErrorCode::input_not_ybe, "input is not a Yang-Baxter operator", rep.to_json());
  }
  const TensorOperator op = r.reshaped(TensorShape({d, d}), TensorShape({d, d}));
  const std::vector<std::size_t> dims(n, d);
  const TensorShape shape(dims);
  return operator_from_columns(shape, shape, [&](Index col) {
    SparseTensor t = SparseTensor::basis(dims, col);
    for (std::size_t p = 0; p + 1 < n; ++p) t.apply_at(op, p);
    return t.entries();
  });
}

TensorOperator ybe_from_nyb(const TensorOperator& s, std::size_t n, bool check_input) {
  if (n < 2) throw Error(ErrorCode::arity_mismatch, "arity must be at least 2");
  const std::size_t d = factor_dim(s, n);
  if (check_input) {
    const YBReport rep = verify_nybe(s, n, Side::right);
    if (!rep.holds || !rep.invertible)
      throw Error(ErrorCode::input_not_nybe, "input is not an n-Yang-Baxter operator", rep.to_json());
  }
  const TensorOperator op = s.reshaped(TensorShape::power(d, n), TensorShape::power(d, n));
  const std::vector<std::size_t> dims(2 * (n - 1), d);
  const TensorShape shape(dims);
  const auto block = static_cast<std::size_t>(TensorShape::power(d, n - 1).total());
  const TensorOperator out = operator_from_columns(shape, shape, [&](Index col) {
    SparseTensor t = SparseTensor::basis(dims, col);
    for (std::size_t p = n - 1; p-- > 0;) t.apply_at(op, p);
    return t.entries();
  });
  return out.reshaped(TensorShape({block, block}), TensorShape({block, block}));
}

TensorOperator conjugate_nyb(const TensorOperator& s, const TensorOperator& phi, std::size_t n) {
  const std::size_t d = factor_dim(s, n);
  if (phi.domain().total() != d || phi.codomain().total() != d)
    throw Error(ErrorCode::shape_mismatch, "φ must be a d×d matrix");
  const TensorOperator p = phi.reshaped(TensorShape({d}), TensorShape({d}));
  TensorOperator pinv;
  try {
    pinv = invert(p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix) throw;
    throw Error(ErrorCode::singular_phi, "φ is not invertible", e.witness());
  }
  const TensorOperator op = s.reshaped(TensorShape::power(d, n), TensorShape::power(d, n));
  return compose(tensor_power(pinv, n), compose(op, tensor_power(p, n)));
}

TensorOperator group_algebra_nyb(const FiniteGroup& g, std::size_t n) {
  const FiniteNRack conj = conjugation_nrack(g, n);
  const std::size_t m = g.size();
  const TensorShape shape = TensorShape::power(m, n);
  TensorOperator s(shape, shape);
  for (Index col = 0; col < shape.total(); ++col) {
    const Tuple x = shape.unflatten(col);
    Tuple y(x.begin() + 1, x.end());
    y.push_back(conj.at(static_cast<std::size_t>(col)));
    s.add(shape.flatten(y), col, Scalar(1));
  }
  return s;
}

}  // namespace braidforge
