#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "braidforge/scalar.hpp"

namespace braidforge {

using Index = std::uint64_t;

/// Largest admissible total dimension of an operator shape.
inline constexpr Index kMaxShapeTotal = Index{1} << 31;

/// Sparse coordinate vector: sorted by index, no literal zeros.
using SparseVector = std::vector<std::pair<Index, Scalar>>;

/// Sorts by index, merges duplicates and drops literal zeros.
void normalize(SparseVector& v);

class TensorShape {
 public:
  TensorShape() = default;
  explicit TensorShape(std::vector<std::size_t> dims);
  static TensorShape power(std::size_t d, std::size_t k);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t rank() const { return dims_.size(); }
  Index total() const { return total_; }

  TensorShape concat(const TensorShape& other) const;
  std::vector<std::size_t> unflatten(Index flat) const;
  Index flatten(const std::vector<std::size_t>& tuple) const;

  friend bool operator==(const TensorShape& a, const TensorShape& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  Index total_ = 1;
};

/// Linear map between tensor powers, stored column-wise.
class TensorOperator {
 public:
  TensorOperator() = default;
  TensorOperator(TensorShape domain, TensorShape codomain);

  static TensorOperator identity(const TensorShape& shape, ScalarMode mode = ScalarMode::exact);

  const TensorShape& domain() const { return domain_; }
  const TensorShape& codomain() const { return codomain_; }
  ScalarMode mode() const { return mode_; }

  /// Accumulates v into entry (row, col).
  void add(Index row, Index col, const Scalar& v);
  void set_column(Index col, SparseVector column);
  Scalar at(Index row, Index col) const;
  const SparseVector& column(Index col) const { return columns_.at(col); }
  std::size_t nnz() const;
  /// (row, col, value) triples sorted by row then column.
  std::vector<std::tuple<Index, Index, Scalar>> entries() const;

  SparseVector apply(const SparseVector& x) const;
  bool is_square() const { return domain_.total() == codomain_.total(); }

  /// Same entries under new factorizations of equal totals.
  TensorOperator reshaped(TensorShape domain, TensorShape codomain) const;
  TensorOperator to_mode(ScalarMode mode) const;

  /// Smallest column where the two operators differ, if any.
  friend std::optional<Index> first_difference(const TensorOperator& a, const TensorOperator& b);
  friend bool operator==(const TensorOperator& a, const TensorOperator& b) {
    return a.domain_.total() == b.domain_.total() && a.codomain_.total() == b.codomain_.total() &&
           !first_difference(a, b).has_value();
  }
  friend bool operator!=(const TensorOperator& a, const TensorOperator& b) { return !(a == b); }

 private:
  TensorShape domain_;
  TensorShape codomain_;
  ScalarMode mode_ = ScalarMode::exact;
  std::vector<SparseVector> columns_;
};

bool same_columns(const SparseVector& a, const SparseVector& b);

TensorOperator compose(const TensorOperator& a, const TensorOperator& b);

/// Kronecker product a ⊗ b.
TensorOperator tensor(const TensorOperator& a, const TensorOperator& b);
TensorOperator tensor_power(const TensorOperator& a, std::size_t k);

/// Id^left ⊗ A ⊗ Id^right for A square on a power of factor_dim.
TensorOperator embed(const TensorOperator& a, std::size_t left, std::size_t right,
                     std::size_t factor_dim);

/// Factor at position p moves to position perm[p].
TensorOperator permutation_operator(const TensorShape& shape, const std::vector<std::size_t>& perm);

/// x1⊗x2⊗…⊗xk ↦ x2⊗…⊗xk⊗x1 on the k-th power of d.
TensorOperator cyclic_operator(std::size_t d, std::size_t k);
/// Full reversal of the k factors.
TensorOperator reverse_operator(std::size_t d, std::size_t k);

TensorOperator invert(const TensorOperator& a);

/// (u1,..,u_legs, v1,..,v_legs, …) for n objects regrouped leg-major:
/// (u1,v1,…) ⊗ (u2,v2,…) ⊗ …; legs = 2 is the usual middle shuffle.
TensorOperator deal_permutation(std::size_t n, std::size_t d, std::size_t legs = 2);

/// A sparse vector living on a tensor product whose total may exceed the
/// operator cap; used as a workspace for chains of factorwise applications.
class SparseTensor {
 public:
  SparseTensor() = default;
  SparseTensor(std::vector<std::size_t> dims, SparseVector entries);
  static SparseTensor basis(std::vector<std::size_t> dims, Index index,
                            ScalarMode mode = ScalarMode::exact);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const SparseVector& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Applies op to the factors [pos, pos + op.domain().rank()).
  void apply_at(const TensorOperator& op, std::size_t pos);
  /// Factor at position p moves to position perm[p].
  void permute(const std::vector<std::size_t>& perm);

  friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
    return same_columns(a.entries_, b.entries_);
  }

 private:
  std::vector<std::size_t> dims_;
  SparseVector entries_;
};

/// Builds an operator column-by-column from a basis-image function.
template <class F>
TensorOperator operator_from_columns(const TensorShape& domain, const TensorShape& codomain, F&& image) {
  TensorOperator op(domain, codomain);
  for (Index c = 0; c < domain.total(); ++c) op.set_column(c, image(c));
  return op;
}

}  // namespace braidforge
