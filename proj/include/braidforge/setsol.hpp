#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidforge/nrack.hpp"

namespace braidforge {

/// A map X^n → X^n on X = {0,…,m−1}, stored as flat output indices.
class SetNMap {
 public:
  SetNMap() = default;
  SetNMap(std::size_t size, std::size_t arity, std::vector<std::uint32_t> table, Side side = Side::right);
  static SetNMap from_function(std::size_t size, std::size_t arity, const std::function<Tuple(const Tuple&)>& f,
                               Side side = Side::right);
  static SetNMap identity(std::size_t size, std::size_t arity, Side side = Side::right);

  std::size_t size() const { return m_; }
  std::size_t arity() const { return n_; }
  Side side() const { return side_; }
  const std::vector<std::uint32_t>& table() const { return table_; }
  std::size_t cells() const { return table_.size(); }

  std::size_t at(std::size_t flat) const { return table_[flat]; }
  Tuple operator()(const Tuple& x) const;
  std::size_t flatten(const Tuple& x) const;
  Tuple unflatten(std::size_t flat) const;

  friend bool operator==(const SetNMap& a, const SetNMap& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.side_ == b.side_ && a.table_ == b.table_;
  }

 private:
  std::size_t m_ = 1;
  std::size_t n_ = 2;
  Side side_ = Side::right;
  std::vector<std::uint32_t> table_;
};

/// Bijectivity of σ_{x,z}(y) (middle), τ_{x,y}(z) (left), η_{y,z}(x) (right)
/// read off s(x,y,z) = (σ_{x,z}(y), τ_{x,y}(z), η_{y,z}(x)).
struct Nondegeneracy {
  bool left = false;
  bool right = false;
  bool middle = false;
  nlohmann::json witnesses = nlohmann::json::object();

  bool all() const { return left && right && middle; }
};

inline constexpr std::size_t kInvolutiveOrderCap = 24;

struct SolutionProfile {
  std::size_t size = 0;
  std::size_t arity = 0;
  bool is_bijective = false;
  bool satisfies_right = false;
  bool satisfies_left = false;
  std::optional<Tuple> right_witness;
  std::optional<Tuple> left_witness;
  std::optional<Nondegeneracy> nondegenerate;  // n = 3 only
  std::optional<std::size_t> involutive_order;
  bool is_3_involutive = false;

  bool is_solution(Side side) const {
    return is_bijective && (side == Side::right ? satisfies_right : satisfies_left);
  }
  /// "solution", "pre-solution" (equation holds, not bijective) or "none".
  std::string label(Side side) const;
  nlohmann::json to_json() const;
};

SolutionProfile check_set_nsolution(const SetNMap& s);
/// Requires n = 3; check_set_nsolution already fills the same fields.
SolutionProfile classify_3solution(const SetNMap& s);

/// Right: (x2,…,xn,⟨x⟩). Left: (⟨x⟩,x1,…,x_{n−1}). Throws
/// verdict_disagreement if the n-rack and n-solution verdicts differ.
SetNMap solution_from_nrack(const FiniteNRack& t);
/// r applied at positions 0, …, n−2 in turn.
SetNMap nsolution_from_solution(const SetNMap& r, std::size_t n);
/// s applied at positions n−2, …, 0 in turn, on X^(n−1) × X^(n−1).
SetNMap solution_from_nsolution(const SetNMap& s);
/// τ∘s∘τ with the side swapped.
SetNMap reverse_conjugate(const SetNMap& s);

/// (f2(x2), …, fn(xn), f1(x1)); f[i] is the table of f_{i+1}.
SetNMap twisted_flip(std::size_t m, const std::vector<std::vector<std::size_t>>& f);

enum class TableFilter { nrack, nsolution, nshelf };
const char* filter_name(TableFilter f);
TableFilter parse_filter(const std::string& name);

struct Census {
  std::size_t m = 0;
  std::size_t n = 0;
  TableFilter filter = TableFilter::nrack;
  std::size_t count = 0;
  bool dumped = false;
  std::vector<std::vector<std::uint32_t>> tables;

  nlohmann::json to_json() const;
};

/// Candidate budget of the unpruned n-solution filter.
inline constexpr std::uint64_t kSolutionCandidateCap = std::uint64_t{1} << 24;

/// All n-ary tables on m points passing the filter, in lexicographic order.
/// Allowed: m ≤ 3 and n ≤ 3, or n = 2 and m ≤ 4.
Census enumerate_tables(std::size_t m, std::size_t n, TableFilter filter, bool dump = false);

}  // namespace braidforge
