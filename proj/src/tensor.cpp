#include "braidforge/tensor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "braidforge/error.hpp"

namespace braidforge {

namespace {

constexpr Index kMaxWorkspaceTotal = Index{1} << 62;

Index checked_product(const std::vector<std::size_t>& dims, Index cap) {
  Index total = 1;
  for (auto d : dims) {
    if (d == 0) throw Error(ErrorCode::shape_mismatch, "tensor factor of dimension 0");
    if (total > cap / d) throw Error(ErrorCode::index_overflow, "tensor shape total dimension too large");
    total *= d;
  }
  if (total > cap) throw Error(ErrorCode::index_overflow, "tensor shape total dimension too large");
  return total;
}

std::string dims_str(const std::vector<std::size_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

}  // namespace

void normalize(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVector out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
    else out.push_back(std::move(e));
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_literal_zero(); });
  v = std::move(out);
}

bool same_columns(const SparseVector& a, const SparseVector& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      if (!a[i].second.is_zero()) return false;
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      if (!b[j].second.is_zero()) return false;
      ++j;
    } else {
      if (a[i].second != b[j].second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// TensorShape

TensorShape::TensorShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  total_ = checked_product(dims_, kMaxShapeTotal);
}

TensorShape TensorShape::power(std::size_t d, std::size_t k) {
  return TensorShape(std::vector<std::size_t>(k, d));
}

TensorShape TensorShape::concat(const TensorShape& other) const {
  auto dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return TensorShape(std::move(dims));
}

std::vector<std::size_t> TensorShape::unflatten(Index flat) const {
  std::vector<std::size_t> t(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    t[i] = static_cast<std::size_t>(flat % dims_[i]);
    flat /= dims_[i];
  }
  return t;
}

Index TensorShape::flatten(const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != dims_.size()) throw Error(ErrorCode::shape_mismatch, "tuple rank mismatch");
  Index flat = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (tuple[i] >= dims_[i]) throw Error(ErrorCode::shape_mismatch, "tuple entry out of range");
    flat = flat * dims_[i] + tuple[i];
  }
  return flat;
}

// ---------------------------------------------------------------------------
// TensorOperator

TensorOperator::TensorOperator(TensorShape domain, TensorShape codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), columns_(domain_.total()) {}

TensorOperator TensorOperator::identity(const TensorShape& shape, ScalarMode mode) {
  TensorOperator op(shape, shape);
  op.mode_ = mode;
  for (Index i = 0; i < shape.total(); ++i) op.columns_[i].emplace_back(i, Scalar::one(mode));
  return op;
}

void TensorOperator::add(Index row, Index col, const Scalar& v) {
  if (row >= codomain_.total() || col >= domain_.total())
    throw Error(ErrorCode::shape_mismatch, "operator entry index out of range");
  if (!v.is_exact()) mode_ = ScalarMode::float64;
  auto& column = columns_[col];
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const auto& e, Index r) { return e.first < r; });
  if (it != column.end() && it->first == row) {
    it->second += v;
    if (it->second.is_literal_zero()) column.erase(it);
  } else if (!v.is_literal_zero()) {
    column.insert(it, {row, v});
  }
}

void TensorOperator::set_column(Index col, SparseVector column) {
  if (col >= domain_.total()) throw Error(ErrorCode::shape_mismatch, "column index out of range");
  normalize(column);
  for (const auto& [row, v] : column) {
    if (row >= codomain_.total()) throw Error(ErrorCode::shape_mismatch, "operator entry index out of range");
    if (!v.is_exact()) mode_ = ScalarMode::float64;
  }
  columns_[col] = std::move(column);
}

Scalar TensorOperator::at(Index row, Index col) const {
  const auto& column = columns_.at(col);
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const auto& e, Index r) { return e.first < r; });
  if (it != column.end() && it->first == row) return it->second;
  return Scalar::zero(mode_);
}

std::size_t TensorOperator::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

std::vector<std::tuple<Index, Index, Scalar>> TensorOperator::entries() const {
  std::vector<std::tuple<Index, Index, Scalar>> out;
  out.reserve(nnz());
  for (Index c = 0; c < columns_.size(); ++c)
    for (const auto& [r, v] : columns_[c]) out.emplace_back(r, c, v);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  return out;
}

SparseVector TensorOperator::apply(const SparseVector& x) const {
  SparseVector out;
  for (const auto& [c, xv] : x) {
    if (c >= domain_.total()) throw Error(ErrorCode::shape_mismatch, "vector index out of range");
    for (const auto& [r, v] : columns_[c]) out.emplace_back(r, v * xv);
  }
  normalize(out);
  return out;
}

TensorOperator TensorOperator::reshaped(TensorShape domain, TensorShape codomain) const {
  if (domain.total() != domain_.total() || codomain.total() != codomain_.total())
    throw Error(ErrorCode::shape_mismatch, "reshape must preserve total dimensions");
  TensorOperator op = *this;
  op.domain_ = std::move(domain);
  op.codomain_ = std::move(codomain);
  return op;
}

TensorOperator TensorOperator::to_mode(ScalarMode mode) const {
  TensorOperator op(domain_, codomain_);
  op.mode_ = mode;
  for (Index c = 0; c < columns_.size(); ++c) {
    SparseVector col;
    for (const auto& [r, v] : columns_[c]) col.emplace_back(r, v.to_mode(mode));
    op.set_column(c, std::move(col));
  }
  op.mode_ = mode;
  return op;
}

std::optional<Index> first_difference(const TensorOperator& a, const TensorOperator& b) {
  if (a.domain_.total() != b.domain_.total() || a.codomain_.total() != b.codomain_.total())
    throw Error(ErrorCode::shape_mismatch, "comparing operators of different sizes");
  for (Index c = 0; c < a.columns_.size(); ++c)
    if (!same_columns(a.columns_[c], b.columns_[c])) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Algebra of operators

TensorOperator compose(const TensorOperator& a, const TensorOperator& b) {
  if (b.codomain().total() != a.domain().total())
    throw Error(ErrorCode::shape_mismatch, "compose: codomain " + dims_str(b.codomain().dims()) +
                                               " does not match domain " + dims_str(a.domain().dims()));
  TensorOperator out(b.domain(), a.codomain());
  for (Index c = 0; c < b.domain().total(); ++c) out.set_column(c, a.apply(b.column(c)));
  return out;
}

TensorOperator tensor(const TensorOperator& a, const TensorOperator& b) {
  TensorOperator out(a.domain().concat(b.domain()), a.codomain().concat(b.codomain()));
  const Index bd = b.domain().total(), bc = b.codomain().total();
  for (Index ca = 0; ca < a.domain().total(); ++ca)
    for (Index cb = 0; cb < bd; ++cb) {
      SparseVector col;
      for (const auto& [ra, va] : a.column(ca))
        for (const auto& [rb, vb] : b.column(cb)) col.emplace_back(ra * bc + rb, va * vb);
      out.set_column(ca * bd + cb, std::move(col));
    }
  return out;
}

TensorOperator tensor_power(const TensorOperator& a, std::size_t k) {
  if (k == 0) return TensorOperator::identity(TensorShape(), a.mode());
  TensorOperator out = a;
  for (std::size_t i = 1; i < k; ++i) out = tensor(out, a);
  return out;
}

TensorOperator embed(const TensorOperator& a, std::size_t left, std::size_t right, std::size_t factor_dim) {
  if (!a.is_square()) throw Error(ErrorCode::shape_mismatch, "embed: operator is not square");
  std::size_t k = 0;
  Index span = 1;
  while (span < a.domain().total()) {
    span *= factor_dim;
    ++k;
  }
  if (span != a.domain().total() || factor_dim == 0)
    throw Error(ErrorCode::shape_mismatch, "embed: operator is not on a power of the factor dimension");
  const TensorShape shape = TensorShape::power(factor_dim, left + k + right);
  const Index lo_size = TensorShape::power(factor_dim, right).total();
  const Index hi_size = TensorShape::power(factor_dim, left).total();
  TensorOperator out(shape, shape);
  for (Index hi = 0; hi < hi_size; ++hi)
    for (Index c = 0; c < span; ++c)
      for (Index lo = 0; lo < lo_size; ++lo) {
        SparseVector col;
        for (const auto& [r, v] : a.column(c)) col.emplace_back((hi * span + r) * lo_size + lo, v);
        out.set_column((hi * span + c) * lo_size + lo, std::move(col));
      }
  return out;
}

namespace {

void check_permutation(const std::vector<std::size_t>& perm, std::size_t k) {
  if (perm.size() != k) throw Error(ErrorCode::non_permutation, "permutation length does not match rank");
  std::vector<bool> seen(k, false);
  for (auto p : perm) {
    if (p >= k || seen[p]) throw Error(ErrorCode::non_permutation, "not a permutation of factor positions");
    seen[p] = true;
  }
}

}  // namespace

TensorOperator permutation_operator(const TensorShape& shape, const std::vector<std::size_t>& perm) {
  check_permutation(perm, shape.rank());
  std::vector<std::size_t> out_dims(shape.rank());
  for (std::size_t p = 0; p < perm.size(); ++p) out_dims[perm[p]] = shape.dims()[p];
  TensorShape out_shape(out_dims);
  TensorOperator op(shape, out_shape);
  std::vector<std::size_t> out_tuple(shape.rank());
  for (Index c = 0; c < shape.total(); ++c) {
    auto t = shape.unflatten(c);
    for (std::size_t p = 0; p < perm.size(); ++p) out_tuple[perm[p]] = t[p];
    op.set_column(c, {{out_shape.flatten(out_tuple), Scalar(1)}});
  }
  return op;
}

TensorOperator cyclic_operator(std::size_t d, std::size_t k) {
  std::vector<std::size_t> perm(k);
  for (std::size_t p = 0; p < k; ++p) perm[p] = (p + k - 1) % k;
  return permutation_operator(TensorShape::power(d, k), perm);
}

TensorOperator reverse_operator(std::size_t d, std::size_t k) {
  std::vector<std::size_t> perm(k);
  for (std::size_t p = 0; p < k; ++p) perm[p] = k - 1 - p;
  return permutation_operator(TensorShape::power(d, k), perm);
}

TensorOperator deal_permutation(std::size_t n, std::size_t d, std::size_t legs) {
  std::vector<std::size_t> perm(n * legs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < legs; ++l) perm[i * legs + l] = l * n + i;
  return permutation_operator(TensorShape::power(d, n * legs), perm);
}

TensorOperator invert(const TensorOperator& a) {
  if (!a.is_square()) throw Error(ErrorCode::shape_mismatch, "invert: operator is not square");
  const Index n = a.domain().total();
  const bool exact = a.mode() == ScalarMode::exact;
  std::vector<std::map<Index, Scalar>> rows(n), inv(n);
  for (Index c = 0; c < n; ++c)
    for (const auto& [r, v] : a.column(c)) rows[r].emplace(c, v);
  for (Index i = 0; i < n; ++i) inv[i].emplace(i, Scalar::one(a.mode()));

  for (Index col = 0; col < n; ++col) {
    std::optional<Index> pivot;
    for (Index r = col; r < n; ++r) {
      auto it = rows[r].find(col);
      if (it == rows[r].end() || it->second.is_zero()) continue;
      if (!pivot) {
        pivot = r;
      } else if (exact ? rows[r].size() < rows[*pivot].size()
                       : it->second.abs() > rows[*pivot].at(col).abs()) {
        pivot = r;
      }
    }
    if (!pivot) throw Error(ErrorCode::singular_matrix, "operator is singular",
                            nlohmann::json{{"column", col}});
    std::swap(rows[col], rows[*pivot]);
    std::swap(inv[col], inv[*pivot]);
    const Scalar p = rows[col].at(col);
    for (auto& [c, v] : rows[col]) v /= p;
    for (auto& [c, v] : inv[col]) v /= p;
    for (Index r = 0; r < n; ++r) {
      if (r == col) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      const Scalar f = it->second;
      for (const auto& [c, v] : rows[col]) {
        auto& target = rows[r][c];
        target -= f * v;
        if (target.is_literal_zero() || (c == col)) rows[r].erase(c);
      }
      for (const auto& [c, v] : inv[col]) {
        auto& target = inv[r][c];
        target -= f * v;
        if (target.is_literal_zero()) inv[r].erase(c);
      }
    }
  }
  TensorOperator out(a.codomain(), a.domain());
  std::vector<SparseVector> cols(n);
  for (Index r = 0; r < n; ++r)
    for (const auto& [c, v] : inv[r]) cols[c].emplace_back(r, v);
  for (Index c = 0; c < n; ++c) out.set_column(c, std::move(cols[c]));
  return out;
}

// ---------------------------------------------------------------------------
// SparseTensor

SparseTensor::SparseTensor(std::vector<std::size_t> dims, SparseVector entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  const Index total = checked_product(dims_, kMaxWorkspaceTotal);
  normalize(entries_);
  for (const auto& e : entries_)
    if (e.first >= total) throw Error(ErrorCode::shape_mismatch, "tensor entry out of range");
}

SparseTensor SparseTensor::basis(std::vector<std::size_t> dims, Index index, ScalarMode mode) {
  return SparseTensor(std::move(dims), {{index, Scalar::one(mode)}});
}

void SparseTensor::apply_at(const TensorOperator& op, std::size_t pos) {
  const auto& in_dims = op.domain().dims();
  if (pos + in_dims.size() > dims_.size() ||
      !std::equal(in_dims.begin(), in_dims.end(), dims_.begin() + static_cast<std::ptrdiff_t>(pos)))
    throw Error(ErrorCode::shape_mismatch, "factorwise application: operator domain " + dims_str(in_dims) +
                                               " does not match tensor factors " + dims_str(dims_));
  Index lo_size = 1;
  for (std::size_t i = pos + in_dims.size(); i < dims_.size(); ++i) lo_size *= dims_[i];
  const Index mid_in = op.domain().total();
  const Index mid_out = op.codomain().total();

  std::vector<std::size_t> new_dims(dims_.begin(), dims_.begin() + static_cast<std::ptrdiff_t>(pos));
  new_dims.insert(new_dims.end(), op.codomain().dims().begin(), op.codomain().dims().end());
  new_dims.insert(new_dims.end(), dims_.begin() + static_cast<std::ptrdiff_t>(pos + in_dims.size()), dims_.end());
  checked_product(new_dims, kMaxWorkspaceTotal);

  SparseVector out;
  for (const auto& [idx, v] : entries_) {
    const Index lo = idx % lo_size;
    const Index mid = (idx / lo_size) % mid_in;
    const Index hi = idx / lo_size / mid_in;
    for (const auto& [r, w] : op.column(mid)) out.emplace_back((hi * mid_out + r) * lo_size + lo, v * w);
  }
  normalize(out);
  dims_ = std::move(new_dims);
  entries_ = std::move(out);
}

void SparseTensor::permute(const std::vector<std::size_t>& perm) {
  check_permutation(perm, dims_.size());
  const std::size_t k = dims_.size();
  std::vector<std::size_t> new_dims(k);
  for (std::size_t p = 0; p < k; ++p) new_dims[perm[p]] = dims_[p];
  std::vector<std::size_t> t(k), u(k);
  SparseVector out;
  out.reserve(entries_.size());
  for (const auto& [idx, v] : entries_) {
    Index flat = idx;
    for (std::size_t i = k; i-- > 0;) {
      t[i] = static_cast<std::size_t>(flat % dims_[i]);
      flat /= dims_[i];
    }
    for (std::size_t p = 0; p < k; ++p) u[perm[p]] = t[p];
    Index o = 0;
    for (std::size_t i = 0; i < k; ++i) o = o * new_dims[i] + u[i];
    out.emplace_back(o, v);
  }
  normalize(out);
  dims_ = std::move(new_dims);
  entries_ = std::move(out);
}

}  // namespace braidforge
