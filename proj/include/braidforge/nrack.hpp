#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "braidforge/nleibniz.hpp"
#include "braidforge/report.hpp"

namespace braidforge {

enum class Side { right, left };

const char* side_name(Side s);

/// Finite set {0,…,m−1} with an n-ary operation table (row-major in the
/// arguments). Axioms are checked by check_nrack, not assumed.
class FiniteNRack {
 public:
  FiniteNRack() = default;
  FiniteNRack(std::size_t size, std::size_t arity, Side side = Side::right);
  FiniteNRack(std::size_t size, std::size_t arity, std::vector<std::uint32_t> table, Side side = Side::right);
  static FiniteNRack from_function(std::size_t size, std::size_t arity,
                                   const std::function<std::size_t(const Tuple&)>& f, Side side = Side::right);

  std::size_t size() const { return m_; }
  std::size_t arity() const { return n_; }
  Side side() const { return side_; }
  const std::vector<std::uint32_t>& table() const { return table_; }
  /// Number of argument tuples, m^n.
  std::size_t cells() const { return table_.size(); }

  std::size_t operator()(const Tuple& x) const { return table_[flatten(x)]; }
  std::size_t at(std::size_t flat) const { return table_[flat]; }
  void set(const Tuple& x, std::size_t value);
  std::size_t flatten(const Tuple& x) const;
  Tuple unflatten(std::size_t flat) const;

  bool certified() const { return certified_; }
  void set_certified(bool c) { certified_ = c; }

  friend bool operator==(const FiniteNRack& a, const FiniteNRack& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.side_ == b.side_ && a.table_ == b.table_;
  }

 private:
  std::size_t m_ = 1;
  std::size_t n_ = 2;
  Side side_ = Side::right;
  std::vector<std::uint32_t> table_;
  bool certified_ = false;
};

/// Group given by its multiplication table; axioms verified on construction.
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<std::uint32_t>> mul);
  static FiniteGroup symmetric(std::size_t k);
  static FiniteGroup cyclic(std::size_t m);

  std::size_t size() const { return mul_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  std::size_t identity() const { return e_; }
  const std::vector<std::vector<std::uint32_t>>& table() const { return mul_; }

 private:
  std::vector<std::vector<std::uint32_t>> mul_;
  std::vector<std::uint32_t> inv_;
  std::size_t e_ = 0;
};

/// Elements of the symmetric group in FiniteGroup::symmetric order.
std::vector<std::vector<std::size_t>> symmetric_group_elements(std::size_t k);
/// Index of a permutation (images of 0..k−1) in that order.
std::size_t permutation_index(const std::vector<std::size_t>& perm);

/// Self-distributivity, bijective translations, and the translation map
/// into the conjugation rack of Sym(X).
VerificationReport check_nrack(const FiniteNRack& t);
void require_certified(const FiniteNRack& t);

FiniteNRack trivial_nrack(std::size_t m, std::size_t n);
FiniteNRack conjugation_nrack(const FiniteGroup& g, std::size_t n);
FiniteNRack nrack_from_rack(const FiniteNRack& rack, std::size_t n);
FiniteNRack extend_rack_by_op(const FiniteNRack& rack, const FiniteNRack& op);
FiniteNRack combine_compatible(const FiniteNRack& rm, const FiniteNRack& rn);

inline constexpr std::size_t kDefaultCarrierCap = 1'000'000;

FiniteNRack rack_from_nrack(const FiniteNRack& t, std::size_t carrier_cap = kDefaultCarrierCap);
FiniteNRack krack_from_power(const FiniteNRack& t, std::size_t k, std::size_t n,
                             std::size_t carrier_cap = kDefaultCarrierCap);

/// Argument reversal; swaps right and left.
FiniteNRack reversed(const FiniteNRack& t);

// ---------------------------------------------------------------------------
// Vector n-racks

/// ⟨x1,…,xn⟩ = exp(ad_{x2,…,xn})(x1) on the underlying space of an algebra.
class VectorNRack {
 public:
  VectorNRack(NLeibnizAlgebra algebra, ScalarMode mode);

  const NLeibnizAlgebra& algebra() const { return algebra_; }
  ScalarMode mode() const { return mode_; }

  Vector operator()(const std::vector<Vector>& x) const;
  /// The right translation ⟨−, y⟩ as a matrix.
  TensorOperator translation(const std::vector<Vector>& y) const;

  /// Report of the sample-grid validation done at construction.
  const VerificationReport& validation() const { return validation_; }
  void set_validation(VerificationReport r) { validation_ = std::move(r); }

 private:
  NLeibnizAlgebra algebra_;
  ScalarMode mode_;
  VerificationReport validation_;
};

/// Basis vectors e_i followed by e_i + e_j (i < j).
std::vector<Vector> sample_grid(std::size_t d, ScalarMode mode = ScalarMode::exact);

VectorNRack nrack_from_nleibniz(const NLeibnizAlgebra& a, ScalarMode mode);
VerificationReport check_vector_nrack(const VectorNRack& r);
VerificationReport verify_tensor_embedding(const NLeibnizAlgebra& a, std::size_t max_power = 2);

}  // namespace braidforge
