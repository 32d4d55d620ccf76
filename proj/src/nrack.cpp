#include "braidforge/nrack.hpp"

#include <algorithm>
#include <numeric>

#include "braidforge/error.hpp"
#include "braidforge/parallel.hpp"

namespace braidforge {

const char* side_name(Side s) { return s == Side::right ? "right" : "left"; }

// ---------------------------------------------------------------------------
// FiniteNRack

FiniteNRack::FiniteNRack(std::size_t size, std::size_t arity, Side side) : m_(size), n_(arity), side_(side) {
  if (size < 1) throw Error(ErrorCode::input_invalid, "carrier must be nonempty");
  if (arity < 2) throw Error(ErrorCode::arity_mismatch, "arity must be at least 2");
  table_.assign(static_cast<std::size_t>(TensorShape::power(size, arity).total()), 0);
}

FiniteNRack::FiniteNRack(std::size_t size, std::size_t arity, std::vector<std::uint32_t> table, Side side)
    : FiniteNRack(size, arity, side) {
  if (table.size() != table_.size()) throw Error(ErrorCode::input_invalid, "operation table is not total");
  for (auto v : table)
    if (v >= size) throw Error(ErrorCode::input_invalid, "table value outside the carrier");
  table_ = std::move(table);
}

FiniteNRack FiniteNRack::from_function(std::size_t size, std::size_t arity,
                                       const std::function<std::size_t(const Tuple&)>& f, Side side) {
  FiniteNRack t(size, arity, side);
  for (std::size_t c = 0; c < t.cells(); ++c) {
    const std::size_t v = f(t.unflatten(c));
    if (v >= size) throw Error(ErrorCode::input_invalid, "table value outside the carrier");
    t.table_[c] = static_cast<std::uint32_t>(v);
  }
  return t;
}

void FiniteNRack::set(const Tuple& x, std::size_t value) {
  if (value >= m_) throw Error(ErrorCode::input_invalid, "table value outside the carrier");
  table_[flatten(x)] = static_cast<std::uint32_t>(value);
  certified_ = false;
}

std::size_t FiniteNRack::flatten(const Tuple& x) const {
  if (x.size() != n_) throw Error(ErrorCode::arity_mismatch, "tuple length differs from arity");
  std::size_t f = 0;
  for (auto v : x) {
    if (v >= m_) throw Error(ErrorCode::input_invalid, "tuple entry outside the carrier");
    f = f * m_ + v;
  }
  return f;
}

Tuple FiniteNRack::unflatten(std::size_t flat) const {
  Tuple t(n_);
  for (std::size_t i = n_; i-- > 0;) {
    t[i] = flat % m_;
    flat /= m_;
  }
  return t;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<std::uint32_t>> mul) : mul_(std::move(mul)) {
  const std::size_t m = mul_.size();
  if (m == 0) throw Error(ErrorCode::input_invalid, "group must be nonempty");
  for (const auto& row : mul_) {
    if (row.size() != m) throw Error(ErrorCode::input_invalid, "multiplication table is not square");
    for (auto v : row)
      if (v >= m) throw Error(ErrorCode::input_invalid, "multiplication table value out of range");
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
          throw Error(ErrorCode::input_invalid, "multiplication is not associative",
                      nlohmann::json{{"a", a}, {"b", b}, {"c", c}});
  bool found = false;
  for (std::size_t e = 0; e < m && !found; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a) ok = mul_[e][a] == a && mul_[a][e] == a;
    if (ok) {
      e_ = e;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::input_invalid, "no identity element");
  inv_.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    bool has = false;
    for (std::size_t b = 0; b < m && !has; ++b)
      if (mul_[a][b] == e_ && mul_[b][a] == e_) {
        inv_[a] = static_cast<std::uint32_t>(b);
        has = true;
      }
    if (!has) throw Error(ErrorCode::input_invalid, "element without inverse", nlohmann::json{{"element", a}});
  }
}

std::vector<std::vector<std::size_t>> symmetric_group_elements(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::size_t permutation_index(const std::vector<std::size_t>& perm) {
  const auto all = symmetric_group_elements(perm.size());
  auto it = std::find(all.begin(), all.end(), perm);
  if (it == all.end()) throw Error(ErrorCode::non_permutation, "not a permutation");
  return static_cast<std::size_t>(it - all.begin());
}

FiniteGroup FiniteGroup::symmetric(std::size_t k) {
  const auto elems = symmetric_group_elements(k);
  std::vector<std::vector<std::uint32_t>> mul(elems.size(), std::vector<std::uint32_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      std::vector<std::size_t> ab(k);
      for (std::size_t i = 0; i < k; ++i) ab[i] = elems[a][elems[b][i]];
      mul[a][b] = static_cast<std::uint32_t>(std::find(elems.begin(), elems.end(), ab) - elems.begin());
    }
  return FiniteGroup(std::move(mul));
}

FiniteGroup FiniteGroup::cyclic(std::size_t m) {
  std::vector<std::vector<std::uint32_t>> mul(m, std::vector<std::uint32_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) mul[a][b] = static_cast<std::uint32_t>((a + b) % m);
  return FiniteGroup(std::move(mul));
}

// ---------------------------------------------------------------------------
// Checks

namespace {

/// Right-side view of a table (left tables are read through reversal).
FiniteNRack right_view(const FiniteNRack& t) { return t.side() == Side::right ? t : reversed(t); }

}  // namespace

VerificationReport check_nrack(const FiniteNRack& input) {
  const FiniteNRack t = right_view(input);
  const std::size_t m = t.size(), n = t.arity();
  VerificationReport report;
  report.subject = std::string("nrack(") + side_name(input.side()) + ")";

  const TensorShape tuples = TensorShape::power(m, 2 * n - 1);
  auto sides = [&](Index i) {
    const Tuple all = tuples.unflatten(i);
    Tuple x(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    Tuple outer(n);
    std::copy(all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), outer.begin() + 1);
    outer[0] = t(x);
    const std::size_t lhs = t(outer);
    Tuple inner = outer;
    Tuple images(n);
    for (std::size_t k = 0; k < n; ++k) {
      inner[0] = x[k];
      images[k] = t(inner);
    }
    return std::make_pair(lhs, t(images));
  };
  report.add(timed_check("self_distributive", [&]() -> std::optional<nlohmann::json> {
    auto bad = parallel_first_failure(tuples.total(), [&](Index i) {
      auto [l, r] = sides(i);
      return l != r;
    });
    if (!bad) return std::nullopt;
    const Tuple all = tuples.unflatten(*bad);
    auto [l, r] = sides(*bad);
    return nlohmann::json{{"x", Tuple(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n))},
                          {"y", Tuple(all.begin() + static_cast<std::ptrdiff_t>(n), all.end())},
                          {"lhs", l},
                          {"rhs", r}};
  }));

  const std::size_t ys = static_cast<std::size_t>(TensorShape::power(m, n - 1).total());
  // translation[y][x] = ⟨x, y⟩
  std::vector<std::vector<std::size_t>> translation(ys, std::vector<std::size_t>(m));
  for (std::size_t y = 0; y < ys; ++y)
    for (std::size_t x = 0; x < m; ++x) translation[y][x] = t.at(x * ys + y);

  report.add(timed_check("translations_bijective", [&]() -> std::optional<nlohmann::json> {
    for (std::size_t y = 0; y < ys; ++y) {
      std::vector<bool> seen(m, false);
      for (std::size_t x = 0; x < m; ++x) {
        if (seen[translation[y][x]]) {
          const Tuple yt = TensorShape::power(m, n - 1).unflatten(y);
          return nlohmann::json{{"y", yt}, {"repeated_value", translation[y][x]}};
        }
        seen[translation[y][x]] = true;
      }
    }
    return std::nullopt;
  }));

  Check hom;
  hom.name = "translation_map_homomorphism";
  if (!report.check_passed("translations_bijective")) {
    hom.status = CheckStatus::skipped;
    hom.note = "right translations are not bijections";
  } else {
    hom = timed_check(hom.name, [&]() -> std::optional<nlohmann::json> {
      std::vector<std::vector<std::size_t>> inverse(ys, std::vector<std::size_t>(m));
      for (std::size_t y = 0; y < ys; ++y)
        for (std::size_t x = 0; x < m; ++x) inverse[y][translation[y][x]] = x;
      const TensorShape block = TensorShape::power(m, n - 1);
      auto fails = [&](Index pair) {
        const std::size_t xb = static_cast<std::size_t>(pair / ys), yb = static_cast<std::size_t>(pair % ys);
        // x̄ ◁ ȳ componentwise
        Tuple xt = block.unflatten(xb);
        for (auto& xi : xt) xi = translation[yb][xi];
        const std::size_t moved = static_cast<std::size_t>(block.flatten(xt));
        for (std::size_t z = 0; z < m; ++z)
          if (translation[moved][z] != translation[yb][translation[xb][inverse[yb][z]]]) return true;
        return false;
      };
      auto bad = parallel_first_failure(Index{ys} * ys, fails);
      if (!bad) return std::nullopt;
      return nlohmann::json{{"x", block.unflatten(*bad / ys)}, {"y", block.unflatten(*bad % ys)}};
    });
  }
  report.add(std::move(hom));
  return report;
}

void require_certified(const FiniteNRack& t) {
  if (t.certified()) return;
  auto report = check_nrack(t);
  if (!report.passed()) {
    nlohmann::json w;
    for (const auto& c : report.checks)
      if (c.status == CheckStatus::fail) {
        w = {{"check", c.name}, {"witness", c.witness}};
        break;
      }
    throw Error(ErrorCode::input_not_certified, "table is not an n-rack", w);
  }
}

// ---------------------------------------------------------------------------
// Constructions

FiniteNRack trivial_nrack(std::size_t m, std::size_t n) {
  auto t = FiniteNRack::from_function(m, n, [](const Tuple& x) { return x[0]; });
  t.set_certified(true);
  return t;
}

FiniteNRack conjugation_nrack(const FiniteGroup& g, std::size_t n) {
  auto t = FiniteNRack::from_function(g.size(), n, [&](const Tuple& x) {
    std::size_t r = x[0];
    for (std::size_t i = 1; i < n; ++i) r = g.mul(g.mul(x[i], r), g.inverse(x[i]));
    return r;
  });
  t.set_certified(true);
  return t;
}

FiniteNRack nrack_from_rack(const FiniteNRack& rack, std::size_t n) {
  if (rack.arity() != 2 || rack.side() != Side::right)
    throw Error(ErrorCode::arity_mismatch, "expected a right rack (arity 2)");
  require_certified(rack);
  auto t = FiniteNRack::from_function(rack.size(), n, [&](const Tuple& x) {
    std::size_t r = x[0];
    for (std::size_t i = 1; i < n; ++i) r = rack({r, x[i]});
    return r;
  });
  t.set_certified(true);
  return t;
}

FiniteNRack extend_rack_by_op(const FiniteNRack& rack, const FiniteNRack& op) {
  if (rack.arity() != 2 || rack.side() != Side::right)
    throw Error(ErrorCode::arity_mismatch, "expected a right rack (arity 2)");
  if (rack.size() != op.size()) throw Error(ErrorCode::input_invalid, "carriers differ");
  require_certified(rack);
  const std::size_t m = rack.size(), n = op.arity();
  for (std::size_t c = 0; c < op.cells(); ++c) {
    const Tuple x = op.unflatten(c);
    for (std::size_t y = 0; y < m; ++y) {
      Tuple moved = x;
      for (auto& xi : moved) xi = rack({xi, y});
      if (rack({op.at(c), y}) != op(moved))
        throw Error(ErrorCode::equivariance_failed, "operation is not equivariant under right translations",
                    nlohmann::json{{"x", x}, {"y", y}});
    }
  }
  auto t = FiniteNRack::from_function(m, n + 1, [&](const Tuple& x) {
    return rack({x[0], op(Tuple(x.begin() + 1, x.end()))});
  });
  t.set_certified(true);
  return t;
}

namespace {

/// First witness where some right translation of `a` fails to be an
/// automorphism of `b`.
std::optional<nlohmann::json> automorphism_witness(const FiniteNRack& a, const FiniteNRack& b) {
  const std::size_t m = a.size();
  const TensorShape ys = TensorShape::power(m, a.arity() - 1);
  for (Index yi = 0; yi < ys.total(); ++yi) {
    const Tuple y = ys.unflatten(yi);
    auto rho = [&](std::size_t x) {
      Tuple t{x};
      t.insert(t.end(), y.begin(), y.end());
      return a(t);
    };
    for (std::size_t c = 0; c < b.cells(); ++c) {
      Tuple x = b.unflatten(c);
      const std::size_t lhs = rho(b.at(c));
      for (auto& xi : x) xi = rho(xi);
      if (lhs != b(x)) return nlohmann::json{{"translation", y}, {"x", b.unflatten(c)}};
    }
  }
  return std::nullopt;
}

}  // namespace

FiniteNRack combine_compatible(const FiniteNRack& rm, const FiniteNRack& rn) {
  if (rm.size() != rn.size()) throw Error(ErrorCode::input_invalid, "carriers differ");
  if (rm.side() != Side::right || rn.side() != Side::right)
    throw Error(ErrorCode::input_invalid, "expected right racks");
  require_certified(rm);
  require_certified(rn);
  if (auto w = automorphism_witness(rm, rn)) {
    (*w)["direction"] = "first acting on second";
    throw Error(ErrorCode::compatibility_failed, "racks are not compatible", *w);
  }
  if (auto w = automorphism_witness(rn, rm)) {
    (*w)["direction"] = "second acting on first";
    throw Error(ErrorCode::compatibility_failed, "racks are not compatible", *w);
  }
  const std::size_t a = rm.arity(), b = rn.arity();
  auto t = FiniteNRack::from_function(rm.size(), a + b - 1, [&](const Tuple& x) {
    Tuple outer{rm(Tuple(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(a)))};
    outer.insert(outer.end(), x.begin() + static_cast<std::ptrdiff_t>(a), x.end());
    return rn(outer);
  });
  t.set_certified(true);
  return t;
}

FiniteNRack krack_from_power(const FiniteNRack& t, std::size_t k, std::size_t n, std::size_t carrier_cap) {
  if (k < 2 || n < 2) throw Error(ErrorCode::arity_mismatch, "k and n must be at least 2");
  if (t.arity() != (n - 1) * (k - 1) + 1)
    throw Error(ErrorCode::arity_mismatch, "arity " + std::to_string(t.arity()) + " is not (n-1)(k-1)+1");
  if (t.side() != Side::right) throw Error(ErrorCode::input_invalid, "expected a right n-rack");
  require_certified(t);
  const std::size_t m = t.size(), block = n - 1;
  Index carrier = 1;
  for (std::size_t i = 0; i < block; ++i) {
    carrier *= m;
    if (carrier > carrier_cap)
      throw Error(ErrorCode::carrier_too_large, "carrier of size m^(n-1) exceeds the cap",
                  nlohmann::json{{"cap", carrier_cap}});
  }
  const TensorShape bshape = TensorShape::power(m, block);
  auto out = FiniteNRack::from_function(static_cast<std::size_t>(carrier), k, [&](const Tuple& xs) {
    std::vector<Tuple> blocks;
    for (auto b : xs) blocks.push_back(bshape.unflatten(b));
    Tuple arg(t.arity());
    std::size_t pos = 1;
    for (std::size_t i = 1; i < k; ++i)
      for (auto v : blocks[i]) arg[pos++] = v;
    Tuple result(block);
    for (std::size_t j = 0; j < block; ++j) {
      arg[0] = blocks[0][j];
      result[j] = t(arg);
    }
    return static_cast<std::size_t>(bshape.flatten(result));
  });
  out.set_certified(true);
  return out;
}

FiniteNRack rack_from_nrack(const FiniteNRack& t, std::size_t carrier_cap) {
  return krack_from_power(t, 2, t.arity(), carrier_cap);
}

FiniteNRack reversed(const FiniteNRack& t) {
  FiniteNRack out(t.size(), t.arity(), t.side() == Side::right ? Side::left : Side::right);
  std::vector<std::uint32_t> table(t.cells());
  for (std::size_t c = 0; c < t.cells(); ++c) {
    Tuple x = t.unflatten(c);
    std::reverse(x.begin(), x.end());
    table[out.flatten(x)] = static_cast<std::uint32_t>(t.at(c));
  }
  out = FiniteNRack(t.size(), t.arity(), std::move(table), out.side());
  out.set_certified(t.certified());
  return out;
}

}  // namespace braidforge
