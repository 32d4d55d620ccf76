#include "braidforge/nleibniz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "braidforge/error.hpp"
#include "braidforge/json_util.hpp"
#include "braidforge/parallel.hpp"

namespace braidforge {

// ---------------------------------------------------------------------------
// Vector helpers

SparseVector to_sparse(const Vector& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_literal_zero()) s.emplace_back(i, v[i]);
  return s;
}

Vector to_dense(const SparseVector& v, std::size_t d, ScalarMode mode) {
  Vector out = zero_vector(d, mode);
  for (const auto& [i, x] : v) out.at(i) += x;
  return out;
}

Vector apply_map(const TensorOperator& op, const Vector& v) {
  return to_dense(op.apply(to_sparse(v)), op.codomain().total(), op.mode());
}

namespace {

Vector add_scaled(Vector acc, const SparseVector& v, const Scalar& c) {
  for (const auto& [i, x] : v) acc.at(i) += c * x;
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// NLeibnizAlgebra

NLeibnizAlgebra::NLeibnizAlgebra(std::size_t arity, std::size_t dim, ScalarMode mode)
    : n_(arity), d_(dim), mode_(mode) {
  if (arity < 2) throw Error(ErrorCode::arity_mismatch, "bracket arity must be at least 2");
  if (dim < 1) throw Error(ErrorCode::shape_mismatch, "algebra dimension must be positive");
  op_ = TensorOperator(TensorShape::power(d_, n_), TensorShape({d_}));
}

void NLeibnizAlgebra::add_bracket(const Tuple& in, std::size_t out, const Scalar& c) {
  op_.add(out, op_.domain().flatten(in), mode_ == ScalarMode::float64 ? c.to_mode(mode_) : c);
  certified_ = false;
}

void NLeibnizAlgebra::set_bracket(const Tuple& in, const Vector& out) {
  if (out.size() != d_) throw Error(ErrorCode::shape_mismatch, "bracket value has wrong dimension");
  SparseVector col;
  for (std::size_t j = 0; j < d_; ++j)
    if (!out[j].is_literal_zero()) col.emplace_back(j, mode_ == ScalarMode::float64 ? out[j].to_mode(mode_) : out[j]);
  op_.set_column(op_.domain().flatten(in), std::move(col));
  certified_ = false;
}

const SparseVector& NLeibnizAlgebra::bracket_sparse(const Tuple& in) const {
  return op_.column(op_.domain().flatten(in));
}

Vector NLeibnizAlgebra::bracket(const Tuple& in) const { return to_dense(bracket_sparse(in), d_, mode_); }

Vector NLeibnizAlgebra::bracket(const std::vector<Vector>& args) const {
  if (args.size() != n_) throw Error(ErrorCode::arity_mismatch, "bracket called with wrong number of arguments");
  Vector acc = zero_vector(d_, mode_);
  Tuple t(n_);
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t slot, const Scalar& coeff) {
    if (slot == n_) {
      acc = add_scaled(std::move(acc), bracket_sparse(t), coeff);
      return;
    }
    for (std::size_t i = 0; i < d_; ++i) {
      if (args[slot].at(i).is_literal_zero()) continue;
      t[slot] = i;
      rec(slot + 1, coeff * args[slot][i]);
    }
  };
  rec(0, Scalar::one(mode_));
  return acc;
}

std::vector<std::pair<Tuple, SparseVector>> NLeibnizAlgebra::nonzero_brackets() const {
  std::vector<std::pair<Tuple, SparseVector>> out;
  for (Index c = 0; c < op_.domain().total(); ++c)
    if (!op_.column(c).empty()) out.emplace_back(op_.domain().unflatten(c), op_.column(c));
  return out;
}

// ---------------------------------------------------------------------------
// Fundamental identity

namespace {

/// [[x], y] for basis x, y.
Vector fi_lhs(const NLeibnizAlgebra& a, const Tuple& x, const Tuple& y) {
  Vector acc = zero_vector(a.dim(), a.mode());
  Tuple t(a.arity());
  std::copy(y.begin(), y.end(), t.begin() + 1);
  for (const auto& [j, c] : a.bracket_sparse(x)) {
    t[0] = j;
    acc = add_scaled(std::move(acc), a.bracket_sparse(t), c);
  }
  return acc;
}

/// Σ_i [x1, …, [xi, y], …, xn] for basis x, y.
Vector fi_rhs(const NLeibnizAlgebra& a, const Tuple& x, const Tuple& y) {
  Vector acc = zero_vector(a.dim(), a.mode());
  Tuple inner(a.arity());
  std::copy(y.begin(), y.end(), inner.begin() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    inner[0] = x[i];
    Tuple outer = x;
    for (const auto& [j, c] : a.bracket_sparse(inner)) {
      outer[i] = j;
      acc = add_scaled(std::move(acc), a.bracket_sparse(outer), c);
    }
  }
  return acc;
}

}  // namespace

VerificationReport check_fundamental_identity(const NLeibnizAlgebra& a) {
  VerificationReport report;
  report.subject = "nleibniz";
  const std::size_t n = a.arity();
  const TensorShape tuples = TensorShape::power(a.dim(), 2 * n - 1);
  auto split = [&](Index i) {
    auto t = tuples.unflatten(i);
    return std::make_pair(Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n)),
                          Tuple(t.begin() + static_cast<std::ptrdiff_t>(n), t.end()));
  };
  report.add(timed_check("fundamental_identity", [&]() -> std::optional<nlohmann::json> {
    auto bad = parallel_first_failure(tuples.total(), [&](Index i) {
      auto [x, y] = split(i);
      return !equal_vectors(fi_lhs(a, x, y), fi_rhs(a, x, y));
    });
    if (!bad) return std::nullopt;
    auto [x, y] = split(*bad);
    return nlohmann::json{{"x", x}, {"y", y}, {"lhs", vector_to_json(fi_lhs(a, x, y))},
                          {"rhs", vector_to_json(fi_rhs(a, x, y))}};
  }));
  return report;
}

void require_certified(const NLeibnizAlgebra& a) {
  if (a.certified()) return;
  auto report = check_fundamental_identity(a);
  if (!report.passed())
    throw Error(ErrorCode::input_not_certified, "algebra fails the fundamental identity",
                report.checks.front().witness);
}

// ---------------------------------------------------------------------------
// Constructions

NLeibnizAlgebra nbracket_from_leibniz(const NLeibnizAlgebra& leibniz, std::size_t n) {
  if (leibniz.arity() != 2) throw Error(ErrorCode::arity_mismatch, "expected a binary bracket");
  if (n < 2) throw Error(ErrorCode::arity_mismatch, "target arity must be at least 2");
  if (!leibniz.certified()) {
    auto report = check_fundamental_identity(leibniz);
    if (!report.passed())
      throw Error(ErrorCode::input_not_leibniz, "input is not a Leibniz algebra", report.checks.front().witness);
  }
  const std::size_t d = leibniz.dim();
  NLeibnizAlgebra out(n, d, leibniz.mode());
  const TensorShape shape = TensorShape::power(d, n);
  for (Index c = 0; c < shape.total(); ++c) {
    const Tuple x = shape.unflatten(c);
    SparseVector v{{x[n - 1], Scalar::one(leibniz.mode())}};
    for (std::size_t i = n - 1; i-- > 0;) {
      SparseVector next;
      for (const auto& [j, coeff] : v)
        for (const auto& [k, w] : leibniz.bracket_sparse({x[i], j})) next.emplace_back(k, coeff * w);
      normalize(next);
      v = std::move(next);
    }
    out.set_bracket(x, to_dense(v, d, leibniz.mode()));
  }
  out.set_certified(true);
  return out;
}

NLeibnizAlgebra extend_bracket_by_leibniz(const NLeibnizAlgebra& leibniz, const NLeibnizAlgebra& b) {
  if (leibniz.arity() != 2) throw Error(ErrorCode::arity_mismatch, "expected a binary bracket");
  if (leibniz.dim() != b.dim()) throw Error(ErrorCode::shape_mismatch, "brackets live on different spaces");
  if (!leibniz.certified()) {
    auto report = check_fundamental_identity(leibniz);
    if (!report.passed())
      throw Error(ErrorCode::input_not_leibniz, "input is not a Leibniz algebra", report.checks.front().witness);
  }
  const std::size_t d = b.dim(), n = b.arity();
  for (std::size_t y = 0; y < d; ++y) {
    auto report = is_derivation(b, ad_basis(leibniz, {y}));
    if (!report.passed()) {
      nlohmann::json w = report.checks.front().witness;
      w["y"] = y;
      throw Error(ErrorCode::derivation_precondition_failed,
                  "right translation by e_" + std::to_string(y) + " is not a derivation", w);
    }
  }
  NLeibnizAlgebra out(n + 1, d, b.mode());
  const TensorShape shape = TensorShape::power(d, n + 1);
  for (Index c = 0; c < shape.total(); ++c) {
    const Tuple x = shape.unflatten(c);
    const Tuple tail(x.begin() + 1, x.end());
    SparseVector v;
    for (const auto& [j, coeff] : b.bracket_sparse(tail))
      for (const auto& [k, w] : leibniz.bracket_sparse({x[0], j})) v.emplace_back(k, coeff * w);
    normalize(v);
    out.set_bracket(x, to_dense(v, d, b.mode()));
  }
  out.set_certified(check_fundamental_identity(out).passed());
  return out;
}

NLeibnizAlgebra fundamental_leibniz(const NLeibnizAlgebra& a) {
  require_certified(a);
  const std::size_t n = a.arity(), d = a.dim();
  const TensorShape block = TensorShape::power(d, n - 1);
  const std::size_t big = static_cast<std::size_t>(block.total());
  NLeibnizAlgebra out(2, big, a.mode());
  Tuple inner(n);
  for (Index xi = 0; xi < block.total(); ++xi) {
    const Tuple x = block.unflatten(xi);
    for (Index yi = 0; yi < block.total(); ++yi) {
      const Tuple y = block.unflatten(yi);
      std::copy(y.begin(), y.end(), inner.begin() + 1);
      SparseVector v;
      for (std::size_t i = 0; i < x.size(); ++i) {
        inner[0] = x[i];
        Tuple replaced = x;
        for (const auto& [j, c] : a.bracket_sparse(inner)) {
          replaced[i] = j;
          v.emplace_back(block.flatten(replaced), c);
        }
      }
      normalize(v);
      if (!v.empty()) out.set_bracket({static_cast<std::size_t>(xi), static_cast<std::size_t>(yi)}, to_dense(v, big, a.mode()));
    }
  }
  out.set_certified(true);
  return out;
}

CentralNLeibnizAlgebra fundamental_leibniz(const CentralNLeibnizAlgebra& a) {
  require_central(a);
  CentralNLeibnizAlgebra out{fundamental_leibniz(a.algebra), {}};
  SparseVector power{{0, Scalar::one(a.algebra.mode())}};
  const std::size_t d = a.algebra.dim();
  for (std::size_t k = 1; k + 1 < a.algebra.arity() + 1; ++k) {
    SparseVector next;
    for (const auto& [i, x] : power)
      for (std::size_t j = 0; j < d; ++j)
        if (!a.central[j].is_literal_zero()) next.emplace_back(i * d + j, x * a.central[j]);
    normalize(next);
    power = std::move(next);
  }
  out.central = to_dense(power, out.algebra.dim(), a.algebra.mode());
  return out;
}

// ---------------------------------------------------------------------------
// Adjoint maps, derivations, exponentials

TensorOperator ad(const NLeibnizAlgebra& a, const std::vector<Vector>& y) {
  if (y.size() + 1 != a.arity()) throw Error(ErrorCode::arity_mismatch, "ad needs n-1 vectors");
  const std::size_t d = a.dim();
  TensorOperator out(TensorShape({d}), TensorShape({d}));
  std::vector<Vector> args;
  args.push_back(zero_vector(d, a.mode()));
  args.insert(args.end(), y.begin(), y.end());
  for (std::size_t j = 0; j < d; ++j) {
    args[0] = basis_vector(d, j, a.mode());
    out.set_column(j, to_sparse(a.bracket(args)));
  }
  return out;
}

TensorOperator ad_basis(const NLeibnizAlgebra& a, const Tuple& y) {
  std::vector<Vector> vs;
  for (auto i : y) vs.push_back(basis_vector(a.dim(), i, a.mode()));
  return ad(a, vs);
}

VerificationReport is_derivation(const NLeibnizAlgebra& a, const TensorOperator& dmap) {
  const std::size_t d = a.dim(), n = a.arity();
  if (dmap.domain().total() != d || dmap.codomain().total() != d)
    throw Error(ErrorCode::shape_mismatch, "derivation must be a d×d map");
  VerificationReport report;
  report.subject = "derivation";
  const TensorShape shape = TensorShape::power(d, n);
  auto sides = [&](Index c) {
    const Tuple x = shape.unflatten(c);
    Vector lhs = to_dense(dmap.apply(a.bracket_sparse(x)), d, a.mode());
    Vector rhs = zero_vector(d, a.mode());
    for (std::size_t i = 0; i < n; ++i) {
      Tuple t = x;
      for (const auto& [j, coeff] : dmap.column(x[i])) {
        t[i] = j;
        rhs = add_scaled(std::move(rhs), a.bracket_sparse(t), coeff);
      }
    }
    return std::make_pair(lhs, rhs);
  };
  report.add(timed_check("derivation_law", [&]() -> std::optional<nlohmann::json> {
    auto bad = parallel_first_failure(shape.total(), [&](Index c) {
      auto [l, r] = sides(c);
      return !equal_vectors(l, r);
    });
    if (!bad) return std::nullopt;
    auto [l, r] = sides(*bad);
    return nlohmann::json{{"x", shape.unflatten(*bad)}, {"lhs", vector_to_json(l)}, {"rhs", vector_to_json(r)}};
  }));
  return report;
}

namespace {

double max_abs(const TensorOperator& op) {
  double m = 0.0;
  for (const auto& [r, c, v] : op.entries()) m = std::max(m, v.abs());
  return m;
}

}  // namespace

TensorOperator exp_map(const TensorOperator& dmap, ScalarMode mode) {
  if (!dmap.is_square()) throw Error(ErrorCode::shape_mismatch, "exp of a non-square map");
  const Index d = dmap.domain().total();
  const TensorShape shape = dmap.domain();
  if (mode == ScalarMode::exact) {
    if (dmap.mode() != ScalarMode::exact) throw Error(ErrorCode::exp_not_computable, "exact exp of a float map");
    std::vector<TensorOperator> powers{TensorOperator::identity(shape)};
    for (Index k = 1; k <= d; ++k) powers.push_back(compose(dmap, powers.back()));
    if (powers.back().nnz() != 0) throw Error(ErrorCode::not_nilpotent, "adjoint map is not nilpotent");
    TensorOperator sum(shape, shape);
    Scalar factorial(1);
    for (Index k = 0; k < d; ++k) {
      if (k > 0) factorial *= Scalar(static_cast<long>(k));
      for (const auto& [r, c, v] : powers[k].entries()) sum.add(r, c, v / factorial);
    }
    return sum;
  }
  const TensorOperator f = dmap.to_mode(ScalarMode::float64);
  TensorOperator sum = TensorOperator::identity(shape, ScalarMode::float64);
  TensorOperator term = sum;
  constexpr int kMaxTerms = 64;
  for (int k = 1; k < kMaxTerms; ++k) {
    term = compose(f, term);
    const Scalar inv_k = Scalar::from_double(1.0 / k);
    TensorOperator scaled(shape, shape);
    for (const auto& [r, c, v] : term.entries()) scaled.add(r, c, v * inv_k);
    term = std::move(scaled);
    if (max_abs(term) < 1e-12) return sum;
    for (const auto& [r, c, v] : term.entries()) sum.add(r, c, v);
  }
  throw Error(ErrorCode::series_not_converged, "exponential series did not converge within 64 terms");
}

TensorOperator exp_ad(const NLeibnizAlgebra& a, const std::vector<Vector>& y, ScalarMode mode) {
  return exp_map(ad(a, y), mode);
}

// ---------------------------------------------------------------------------
// Central elements

CentralNLeibnizAlgebra adjoin_unit(const NLeibnizAlgebra& a) {
  require_certified(a);
  const std::size_t d = a.dim(), n = a.arity();
  NLeibnizAlgebra bar(n, d + 1, a.mode());
  for (const auto& [in, out] : a.nonzero_brackets()) {
    Tuple shifted = in;
    for (auto& i : shifted) ++i;
    for (const auto& [j, c] : out) bar.add_bracket(shifted, j + 1, c);
  }
  bar.set_certified(true);
  return {std::move(bar), basis_vector(d + 1, 0, a.mode())};
}

std::optional<nlohmann::json> centrality_witness(const NLeibnizAlgebra& a, const Vector& z) {
  const std::size_t d = a.dim(), n = a.arity();
  if (z.size() != d) throw Error(ErrorCode::shape_mismatch, "central candidate has wrong dimension");
  const TensorShape others = TensorShape::power(d, n - 1);
  for (std::size_t slot = 0; slot < n; ++slot)
    for (Index o = 0; o < others.total(); ++o) {
      const Tuple rest = others.unflatten(o);
      std::vector<Vector> args;
      for (std::size_t i = 0, r = 0; i < n; ++i)
        args.push_back(i == slot ? z : basis_vector(d, rest[r++], a.mode()));
      Vector v = a.bracket(args);
      if (!is_zero_vector(v)) return nlohmann::json{{"slot", slot}, {"others", rest}, {"value", vector_to_json(v)}};
    }
  return std::nullopt;
}

bool is_central(const NLeibnizAlgebra& a, const Vector& z) { return !centrality_witness(a, z).has_value(); }

void require_central(const CentralNLeibnizAlgebra& a) {
  if (auto w = centrality_witness(a.algebra, a.central))
    throw Error(ErrorCode::not_central, "distinguished element is not central", *w);
}

std::vector<Vector> central_elements(const NLeibnizAlgebra& a) {
  const std::size_t d = a.dim(), n = a.arity();
  const TensorShape others = TensorShape::power(d, n - 1);
  DenseMatrix rows;
  for (std::size_t slot = 0; slot < n; ++slot)
    for (Index o = 0; o < others.total(); ++o) {
      const Tuple rest = others.unflatten(o);
      DenseMatrix block(d, zero_vector(d, a.mode()));
      for (std::size_t k = 0; k < d; ++k) {
        Tuple t;
        for (std::size_t i = 0, r = 0; i < n; ++i) t.push_back(i == slot ? k : rest[r++]);
        for (const auto& [j, c] : a.bracket_sparse(t)) block[j][k] = c;
      }
      for (auto& row : block)
        if (!is_zero_vector(row)) rows.push_back(std::move(row));
    }
  return null_space(std::move(rows), d);
}

// ---------------------------------------------------------------------------
// Homomorphisms

VerificationReport is_homomorphism(const NLeibnizAlgebra& a, const NLeibnizAlgebra& b, const TensorOperator& phi) {
  if (a.arity() != b.arity()) throw Error(ErrorCode::arity_mismatch, "algebras have different arities");
  if (phi.domain().total() != a.dim() || phi.codomain().total() != b.dim())
    throw Error(ErrorCode::shape_mismatch, "map dimensions do not match the algebras");
  const std::size_t n = a.arity(), d = a.dim();
  VerificationReport report;
  report.subject = "homomorphism";
  const TensorShape shape = TensorShape::power(d, n);
  auto sides = [&](Index c) {
    const Tuple x = shape.unflatten(c);
    Vector lhs = apply_map(phi, a.bracket(x));
    std::vector<Vector> images;
    for (auto i : x) images.push_back(to_dense(phi.column(i), b.dim(), b.mode()));
    return std::make_pair(lhs, b.bracket(images));
  };
  report.add(timed_check("bracket_preserved", [&]() -> std::optional<nlohmann::json> {
    auto bad = parallel_first_failure(shape.total(), [&](Index c) {
      auto [l, r] = sides(c);
      return !equal_vectors(l, r);
    });
    if (!bad) return std::nullopt;
    auto [l, r] = sides(*bad);
    return nlohmann::json{{"x", shape.unflatten(*bad)}, {"lhs", vector_to_json(l)}, {"rhs", vector_to_json(r)}};
  }));

  Stopwatch sw;
  Check lemma;
  lemma.name = "exp_ad_commutes";
  const TensorShape ys = TensorShape::power(d, n - 1);
  try {
    for (Index yi = 0; yi < ys.total() && lemma.status == CheckStatus::pass; ++yi) {
      const Tuple y = ys.unflatten(yi);
      std::vector<Vector> ya, yb;
      for (auto i : y) {
        ya.push_back(basis_vector(d, i, a.mode()));
        yb.push_back(to_dense(phi.column(i), b.dim(), b.mode()));
      }
      const TensorOperator lhs = compose(phi, exp_ad(a, ya, a.mode()));
      const TensorOperator rhs = compose(exp_ad(b, yb, b.mode()), phi);
      if (auto col = first_difference(lhs, rhs)) {
        lemma.status = CheckStatus::fail;
        lemma.witness = {{"y", y}, {"column", *col}};
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::not_nilpotent && e.code() != ErrorCode::series_not_converged &&
        e.code() != ErrorCode::exp_not_computable)
      throw;
    lemma.status = CheckStatus::skipped;
    lemma.witness = nullptr;
    lemma.note = "exp-not-computable: " + std::string(e.what());
  }
  lemma.elapsed_ms = sw.elapsed_ms();
  report.add(std::move(lemma));
  return report;
}

// ---------------------------------------------------------------------------
// Utilities

NLeibnizAlgebra reversed(const NLeibnizAlgebra& a) {
  NLeibnizAlgebra out(a.arity(), a.dim(), a.mode());
  for (const auto& [in, v] : a.nonzero_brackets()) {
    Tuple r(in.rbegin(), in.rend());
    out.set_bracket(r, to_dense(v, a.dim(), a.mode()));
  }
  out.set_certified(false);
  return out;
}

CentralNLeibnizAlgebra reversed(const CentralNLeibnizAlgebra& a) { return {reversed(a.algebra), a.central}; }

NLeibnizAlgebra transport(const NLeibnizAlgebra& a, const TensorOperator& phi) {
  const std::size_t d = a.dim(), n = a.arity();
  if (phi.domain().total() != d || !phi.is_square()) throw Error(ErrorCode::shape_mismatch, "φ must be d×d");
  TensorOperator inv;
  try {
    inv = invert(phi);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singular_matrix) throw Error(ErrorCode::singular_phi, "φ is not invertible");
    throw;
  }
  NLeibnizAlgebra out(n, d, a.mode());
  const TensorShape shape = TensorShape::power(d, n);
  for (Index c = 0; c < shape.total(); ++c) {
    const Tuple x = shape.unflatten(c);
    std::vector<Vector> pre;
    for (auto i : x) pre.push_back(to_dense(inv.column(i), d, a.mode()));
    out.set_bracket(x, apply_map(phi, a.bracket(pre)));
  }
  out.set_certified(a.certified());
  return out;
}

}  // namespace braidforge
