#include "braidforge/setsol.hpp"

#include <algorithm>
#include <numeric>

#include "braidforge/error.hpp"
#include "braidforge/parallel.hpp"

namespace braidforge {

// ---------------------------------------------------------------------------
// SetNMap

SetNMap::SetNMap(std::size_t size, std::size_t arity, std::vector<std::uint32_t> table, Side side)
    : m_(size), n_(arity), side_(side), table_(std::move(table)) {
  if (size < 1) throw Error(ErrorCode::input_invalid, "carrier must be nonempty");
  if (arity < 2) throw Error(ErrorCode::arity_mismatch, "arity must be at least 2");
  const Index cells = TensorShape::power(size, arity).total();
  if (table_.size() != cells) throw Error(ErrorCode::input_invalid, "map table is not total");
  for (auto v : table_)
    if (v >= cells) throw Error(ErrorCode::input_invalid, "map value outside X^n");
}

SetNMap SetNMap::from_function(std::size_t size, std::size_t arity, const std::function<Tuple(const Tuple&)>& f,
                               Side side) {
  const TensorShape shape = TensorShape::power(size, arity);
  std::vector<std::uint32_t> table(shape.total());
  for (Index c = 0; c < shape.total(); ++c) {
    const Tuple y = f(shape.unflatten(c));
    if (y.size() != arity) throw Error(ErrorCode::arity_mismatch, "map output has the wrong length");
    for (auto v : y)
      if (v >= size) throw Error(ErrorCode::input_invalid, "map value outside the carrier");
    table[c] = static_cast<std::uint32_t>(shape.flatten(y));
  }
  return SetNMap(size, arity, std::move(table), side);
}

SetNMap SetNMap::identity(std::size_t size, std::size_t arity, Side side) {
  std::vector<std::uint32_t> table(TensorShape::power(size, arity).total());
  std::iota(table.begin(), table.end(), 0u);
  return SetNMap(size, arity, std::move(table), side);
}

std::size_t SetNMap::flatten(const Tuple& x) const {
  if (x.size() != n_) throw Error(ErrorCode::arity_mismatch, "tuple length differs from arity");
  std::size_t f = 0;
  for (auto v : x) {
    if (v >= m_) throw Error(ErrorCode::input_invalid, "tuple entry outside the carrier");
    f = f * m_ + v;
  }
  return f;
}

Tuple SetNMap::unflatten(std::size_t flat) const {
  Tuple t(n_);
  for (std::size_t i = n_; i-- > 0;) {
    t[i] = flat % m_;
    flat /= m_;
  }
  return t;
}

Tuple SetNMap::operator()(const Tuple& x) const { return unflatten(table_[flatten(x)]); }

// ---------------------------------------------------------------------------
// Profiles

namespace {

/// Applies s to the n entries of x starting at position p.
void apply_at(const SetNMap& s, Tuple& x, std::size_t p) {
  const std::size_t n = s.arity(), m = s.size();
  std::size_t f = 0;
  for (std::size_t i = 0; i < n; ++i) f = f * m + x[p + i];
  std::size_t out = s.at(f);
  for (std::size_t i = n; i-- > 0;) {
    x[p + i] = out % m;
    out /= m;
  }
}

std::vector<std::size_t> chain(std::size_t n, Side side, bool lhs) {
  std::vector<std::size_t> out;
  if (side == Side::right) {
    if (lhs) {
      out.push_back(0);
      for (std::size_t p = n; p-- > 0;) out.push_back(p);
    } else {
      for (std::size_t p = n; p-- > 0;) out.push_back(p);
      out.push_back(n - 1);
    }
  } else {
    if (lhs) {
      for (std::size_t p = 0; p < n; ++p) out.push_back(p);
      out.push_back(0);
    } else {
      out.push_back(n - 1);
      for (std::size_t p = 0; p < n; ++p) out.push_back(p);
    }
  }
  return out;
}

std::optional<Tuple> equation_witness(const SetNMap& s, Side side) {
  const std::size_t n = s.arity();
  const TensorShape tuples = TensorShape::power(s.size(), 2 * n - 1);
  const auto lhs = chain(n, side, true), rhs = chain(n, side, false);
  auto bad = parallel_first_failure(tuples.total(), [&](Index i) {
    Tuple a = tuples.unflatten(i), b = a;
    for (auto p : lhs) apply_at(s, a, p);
    for (auto p : rhs) apply_at(s, b, p);
    return a != b;
  });
  if (!bad) return std::nullopt;
  return tuples.unflatten(*bad);
}

bool bijective(const SetNMap& s) {
  std::vector<bool> seen(s.cells(), false);
  for (auto v : s.table()) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::uint32_t> compose_tables(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

/// component(x, y, z) of s, family parameters fixed, argument varied.
std::optional<nlohmann::json> family_witness(const SetNMap& s, std::size_t component, std::size_t arg) {
  const std::size_t m = s.size();
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      std::vector<bool> seen(m, false);
      for (std::size_t v = 0; v < m; ++v) {
        Tuple x(3);
        std::size_t fill[2] = {p, q};
        for (std::size_t i = 0, k = 0; i < 3; ++i) x[i] = i == arg ? v : fill[k++];
        const std::size_t out = s(x)[component];
        if (seen[out]) return nlohmann::json{{"parameters", Tuple{p, q}}, {"repeated_value", out}};
        seen[out] = true;
      }
    }
  return std::nullopt;
}

}  // namespace

std::string SolutionProfile::label(Side side) const {
  const bool holds = side == Side::right ? satisfies_right : satisfies_left;
  if (!holds) return "none";
  return is_bijective ? "solution" : "pre-solution";
}

nlohmann::json SolutionProfile::to_json() const {
  nlohmann::json j{{"size", size},
                   {"arity", arity},
                   {"is_bijective", is_bijective},
                   {"satisfies_right", satisfies_right},
                   {"satisfies_left", satisfies_left},
                   {"right_label", label(Side::right)},
                   {"left_label", label(Side::left)},
                   {"right_witness", right_witness ? nlohmann::json(*right_witness) : nlohmann::json()},
                   {"left_witness", left_witness ? nlohmann::json(*left_witness) : nlohmann::json()},
                   {"involutive_order", involutive_order ? nlohmann::json(*involutive_order) : nlohmann::json()}};
  if (arity == 3) {
    j["is_3_involutive"] = is_3_involutive;
    if (nondegenerate)
      j["nondegenerate"] = {{"left", nondegenerate->left},
                            {"right", nondegenerate->right},
                            {"middle", nondegenerate->middle},
                            {"all", nondegenerate->all()},
                            {"witnesses", nondegenerate->witnesses}};
  }
  return j;
}

SolutionProfile check_set_nsolution(const SetNMap& s) {
  SolutionProfile p;
  p.size = s.size();
  p.arity = s.arity();
  p.is_bijective = bijective(s);
  p.right_witness = equation_witness(s, Side::right);
  p.left_witness = equation_witness(s, Side::left);
  p.satisfies_right = !p.right_witness;
  p.satisfies_left = !p.left_witness;

  std::vector<std::uint32_t> id(s.cells()), power = s.table();
  std::iota(id.begin(), id.end(), 0u);
  for (std::size_t k = 1; k <= kInvolutiveOrderCap; ++k) {
    if (power == id) {
      p.involutive_order = k;
      break;
    }
    power = compose_tables(s.table(), power);
  }

  if (s.arity() == 3) {
    p.is_3_involutive = compose_tables(s.table(), compose_tables(s.table(), s.table())) == id;
    Nondegeneracy nd;
    // σ_{x,z}(y): component 0 in y; τ_{x,y}(z): component 1 in z; η_{y,z}(x): component 2 in x
    auto middle = family_witness(s, 0, 1);
    auto left = family_witness(s, 1, 2);
    auto right = family_witness(s, 2, 0);
    nd.middle = !middle;
    nd.left = !left;
    nd.right = !right;
    if (middle) nd.witnesses["middle"] = *middle;
    if (left) nd.witnesses["left"] = *left;
    if (right) nd.witnesses["right"] = *right;
    p.nondegenerate = nd;
  }
  return p;
}

SolutionProfile classify_3solution(const SetNMap& s) {
  if (s.arity() != 3) throw Error(ErrorCode::arity_mismatch, "classification needs arity 3");
  return check_set_nsolution(s);
}

// ---------------------------------------------------------------------------
// Constructions

SetNMap solution_from_nrack(const FiniteNRack& t) {
  const std::size_t n = t.arity();
  const Side side = t.side();
  SetNMap s = SetNMap::from_function(
      t.size(), n,
      [&](const Tuple& x) {
        Tuple y(n);
        if (side == Side::right) {
          std::copy(x.begin() + 1, x.end(), y.begin());
          y[n - 1] = t(x);
        } else {
          y[0] = t(x);
          std::copy(x.begin(), x.end() - 1, y.begin() + 1);
        }
        return y;
      },
      side);
  const bool rack = check_nrack(t).passed();
  const SolutionProfile p = check_set_nsolution(s);
  if (rack != p.is_solution(side))
    throw Error(ErrorCode::verdict_disagreement, "n-rack verdict and n-solution verdict differ",
                nlohmann::json{{"table", t.table()}, {"profile", p.to_json()}});
  return s;
}

namespace {

void require_solution(const SetNMap& s) {
  const SolutionProfile p = check_set_nsolution(s);
  if (!p.is_solution(s.side()))
    throw Error(ErrorCode::input_invalid, "input is not a set-theoretical solution", p.to_json());
}

}  // namespace

SetNMap nsolution_from_solution(const SetNMap& r, std::size_t n) {
  if (r.arity() != 2) throw Error(ErrorCode::arity_mismatch, "expected a binary solution");
  if (n < 2) throw Error(ErrorCode::arity_mismatch, "target arity must be at least 2");
  require_solution(r);
  return SetNMap::from_function(
      r.size(), n,
      [&](const Tuple& x) {
        Tuple y = x;
        for (std::size_t p = 0; p + 1 < n; ++p) apply_at(r, y, p);
        return y;
      },
      r.side());
}

SetNMap solution_from_nsolution(const SetNMap& s) {
  require_solution(s);
  const std::size_t n = s.arity(), m = s.size();
  const auto big = static_cast<std::size_t>(TensorShape::power(m, n - 1).total());
  const TensorShape flat = TensorShape::power(m, 2 * (n - 1));
  std::vector<std::uint32_t> table(flat.total());
  for (Index c = 0; c < flat.total(); ++c) {
    Tuple x = flat.unflatten(c);
    for (std::size_t p = n - 1; p-- > 0;) apply_at(s, x, p);
    table[c] = static_cast<std::uint32_t>(flat.flatten(x));
  }
  return SetNMap(big, 2, std::move(table), s.side());
}

SetNMap reverse_conjugate(const SetNMap& s) {
  const Side other = s.side() == Side::right ? Side::left : Side::right;
  return SetNMap::from_function(
      s.size(), s.arity(),
      [&](const Tuple& x) {
        Tuple r(x.rbegin(), x.rend());
        Tuple y = s(r);
        std::reverse(y.begin(), y.end());
        return y;
      },
      other);
}

SetNMap twisted_flip(std::size_t m, const std::vector<std::vector<std::size_t>>& f) {
  const std::size_t n = f.size();
  for (const auto& fi : f) {
    if (fi.size() != m) throw Error(ErrorCode::input_invalid, "function table has the wrong size");
    for (auto v : fi)
      if (v >= m) throw Error(ErrorCode::input_invalid, "function value outside the carrier");
  }
  return SetNMap::from_function(m, n, [&](const Tuple& x) {
    Tuple y(n);
    for (std::size_t i = 0; i + 1 < n; ++i) y[i] = f[i + 1][x[i + 1]];
    y[n - 1] = f[0][x[0]];
    return y;
  });
}

const char* filter_name(TableFilter f) {
  switch (f) {
    case TableFilter::nrack:
      return "nrack";
    case TableFilter::nsolution:
      return "nsolution";
    case TableFilter::nshelf:
      return "nshelf";
  }
  return "nrack";
}

TableFilter parse_filter(const std::string& name) {
  if (name == "nrack") return TableFilter::nrack;
  if (name == "nsolution") return TableFilter::nsolution;
  if (name == "nshelf") return TableFilter::nshelf;
  throw Error(ErrorCode::schema_error, "unknown filter: " + name);
}

nlohmann::json Census::to_json() const {
  nlohmann::json j{{"count", count}, {"filter", filter_name(filter)}, {"m", m}, {"n", n}};
  if (dumped) j["tables"] = tables;
  return j;
}

}  // namespace braidforge
