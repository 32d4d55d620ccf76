#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "braidforge/error.hpp"
#include "braidforge/parallel.hpp"
#include "braidforge/setsol.hpp"

namespace braidforge {

namespace {

using Table = std::vector<std::uint32_t>;

/// Backtracking over operation tables in lexicographic cell order. Cell
/// c = x1·m^(n−1) + flat(x2,…,xn); every self-distributivity constraint is
/// checked as soon as its last cell is assigned.
class Backtracker {
 public:
  Backtracker(std::size_t m, std::size_t n, bool bijective)
      : m_(m), n_(n), ys_(static_cast<std::size_t>(TensorShape::power(m, n - 1).total())),
        cells_(static_cast<std::size_t>(TensorShape::power(m, n).total())), bijective_(bijective) {
    digits_.resize(cells_ * n_);
    for (std::size_t c = 0; c < cells_; ++c) {
      std::size_t f = c;
      for (std::size_t i = n_; i-- > 0;) {
        digits_[c * n_ + i] = static_cast<std::uint32_t>(f % m_);
        f /= m_;
      }
    }
  }

  std::size_t cells() const { return cells_; }

  struct State {
    Table table;
    std::vector<std::uint32_t> used;  // per translation column, bitmask of values
  };

  State empty_state() const { return {Table(cells_, 0), std::vector<std::uint32_t>(ys_, 0)}; }

  /// Assigns cell k (all cells below are assigned); false if a constraint fails.
  bool assign(State& s, std::size_t k, std::uint32_t v) const {
    const std::size_t y = k % ys_;
    if (bijective_ && (s.used[y] >> v & 1u)) return false;
    s.table[k] = v;
    if (!consistent(s.table, k)) return false;
    if (bijective_) s.used[y] |= 1u << v;
    return true;
  }

  void unassign(State& s, std::size_t k) const {
    if (bijective_) s.used[k % ys_] &= ~(1u << s.table[k]);
  }

  /// Counts completions of s whose first `from` cells are assigned.
  void complete(State& s, std::size_t from, std::size_t& count, std::vector<Table>* out) const {
    if (from == cells_) {
      ++count;
      if (out) out->push_back(s.table);
      return;
    }
    for (std::uint32_t v = 0; v < m_; ++v) {
      if (!assign(s, from, v)) continue;
      complete(s, from + 1, count, out);
      unassign(s, from);
    }
  }

 private:
  /// ⟨⟨x̄⟩, ȳ⟩ = ⟨⟨x1,ȳ⟩, …, ⟨xn,ȳ⟩⟩; true if some needed cell is unassigned.
  bool holds(const Table& t, std::size_t known, std::size_t x, std::size_t y) const {
    if (x >= known) return true;
    const std::size_t lhs_cell = t[x] * ys_ + y;
    if (lhs_cell >= known) return true;
    std::size_t rhs_cell = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t b = digits_[x * n_ + i] * ys_ + y;
      if (b >= known) return true;
      rhs_cell = rhs_cell * m_ + t[b];
    }
    if (rhs_cell >= known) return true;
    return t[lhs_cell] == t[rhs_cell];
  }

  bool consistent(const Table& t, std::size_t k) const {
    const std::size_t known = k + 1;
    const std::size_t k0 = digits_[k * n_], ky = k % ys_;
    // k as the inner cell x̄
    for (std::size_t y = 0; y < ys_; ++y)
      if (!holds(t, known, k, y)) return false;
    // k as (x_i, ȳ) or as (⟨x̄⟩, ȳ)
    for (std::size_t x = 0; x < cells_; ++x) {
      bool involved = x < known && t[x] == k0;
      for (std::size_t i = 0; i < n_ && !involved; ++i) involved = digits_[x * n_ + i] == k0;
      if (involved && !holds(t, known, x, ky)) return false;
    }
    // k as the outer cell (⟨x1,ȳ⟩, …, ⟨xn,ȳ⟩)
    std::vector<std::vector<std::size_t>> pre(m_);
    for (std::size_t y = 0; y < ys_; ++y) {
      for (auto& p : pre) p.clear();
      for (std::size_t x = 0; x < m_; ++x) {
        const std::size_t cell = x * ys_ + y;
        if (cell < known) pre[t[cell]].push_back(x);
      }
      std::vector<std::size_t> pick(n_, 0);
      bool any = true;
      for (std::size_t i = 0; i < n_; ++i) any = any && !pre[digits_[k * n_ + i]].empty();
      if (!any) continue;
      for (;;) {
        std::size_t x = 0;
        for (std::size_t i = 0; i < n_; ++i) x = x * m_ + pre[digits_[k * n_ + i]][pick[i]];
        if (!holds(t, known, x, y)) return false;
        std::size_t i = n_;
        while (i-- > 0) {
          if (++pick[i] < pre[digits_[k * n_ + i]].size()) break;
          pick[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
    }
    return true;
  }

  std::size_t m_, n_, ys_, cells_;
  bool bijective_;
  std::vector<std::uint32_t> digits_;
};

Census backtrack_census(std::size_t m, std::size_t n, TableFilter filter, bool dump) {
  const Backtracker bt(m, n, filter == TableFilter::nrack);
  // Split on a short prefix; each prefix is completed independently.
  const std::size_t depth = std::min<std::size_t>(bt.cells(), 3);
  std::vector<Backtracker::State> prefixes;
  {
    Backtracker::State s = bt.empty_state();
    std::function<void(std::size_t)> grow = [&](std::size_t k) {
      if (k == depth) {
        prefixes.push_back(s);
        return;
      }
      for (std::uint32_t v = 0; v < m; ++v) {
        if (!bt.assign(s, k, v)) continue;
        grow(k + 1);
        bt.unassign(s, k);
      }
    };
    grow(0);
  }
  std::vector<std::size_t> counts(prefixes.size(), 0);
  std::vector<std::vector<Table>> found(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < prefixes.size(); i = next++)
      bt.complete(prefixes[i], depth, counts[i], dump ? &found[i] : nullptr);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(worker_threads(), prefixes.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Census c;
  c.m = m;
  c.n = n;
  c.filter = filter;
  c.dumped = dump;
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    c.count += counts[i];
    for (auto& t : found[i]) c.tables.push_back(std::move(t));
  }
  return c;
}

Census solution_census(std::size_t m, std::size_t n, bool dump) {
  const auto cells = static_cast<std::size_t>(TensorShape::power(m, n).total());
  std::uint64_t candidates = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    candidates *= m;
    if (candidates > kSolutionCandidateCap)
      throw Error(ErrorCode::cap_exceeded, "too many candidate tables for the n-solution filter",
                  nlohmann::json{{"cap", kSolutionCandidateCap}});
  }
  auto table_of = [&](std::uint64_t idx) {
    Table t(cells);
    for (std::size_t c = cells; c-- > 0;) {
      t[c] = static_cast<std::uint32_t>(idx % m);
      idx /= m;
    }
    return t;
  };
  auto passes = [&](const Table& t) {
    const TensorShape shape = TensorShape::power(m, n);
    std::vector<std::uint32_t> map(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      Tuple x = shape.unflatten(c);
      Tuple y(x.begin() + 1, x.end());
      y.push_back(t[c]);
      map[c] = static_cast<std::uint32_t>(shape.flatten(y));
    }
    return check_set_nsolution(SetNMap(m, n, std::move(map))).is_solution(Side::right);
  };
  const std::size_t workers = std::max<std::size_t>(1, worker_threads());
  const std::uint64_t chunk = std::max<std::uint64_t>(1, (candidates + workers - 1) / workers);
  std::vector<std::size_t> counts(workers, 0);
  std::vector<std::vector<Table>> found(workers);
  std::vector<std::thread> pool;
  auto work = [&](std::size_t w) {
    const std::uint64_t lo = w * chunk, hi = std::min(candidates, lo + chunk);
    for (std::uint64_t i = lo; i < hi; ++i) {
      Table t = table_of(i);
      if (!passes(t)) continue;
      ++counts[w];
      if (dump) found[w].push_back(std::move(t));
    }
  };
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  Census c;
  c.m = m;
  c.n = n;
  c.filter = TableFilter::nsolution;
  c.dumped = dump;
  for (std::size_t w = 0; w < workers; ++w) {
    c.count += counts[w];
    for (auto& t : found[w]) c.tables.push_back(std::move(t));
  }
  return c;
}

}  // namespace

Census enumerate_tables(std::size_t m, std::size_t n, TableFilter filter, bool dump) {
  if (m < 1) throw Error(ErrorCode::input_invalid, "carrier must be nonempty");
  if (n < 2) throw Error(ErrorCode::arity_mismatch, "arity must be at least 2");
  const bool allowed = (m <= 3 && n <= 3) || (n == 2 && m <= 4);
  if (!allowed)
    throw Error(ErrorCode::cap_exceeded, "enumeration is limited to m <= 3, n <= 3, or n = 2 with m <= 4",
                nlohmann::json{{"m", m}, {"n", n}});
  if (filter == TableFilter::nsolution) return solution_census(m, n, dump);
  return backtrack_census(m, n, filter, dump);
}

}  // namespace braidforge
