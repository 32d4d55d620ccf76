#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "braidforge/linalg.hpp"
#include "braidforge/report.hpp"
#include "braidforge/tensor.hpp"

namespace braidforge {

using Tuple = std::vector<std::size_t>;

/// Vector space k^d with an n-linear bracket given by structure constants.
/// The fundamental identity is a checked property (see certified()).
class NLeibnizAlgebra {
 public:
  NLeibnizAlgebra() = default;
  NLeibnizAlgebra(std::size_t arity, std::size_t dim, ScalarMode mode = ScalarMode::exact);

  std::size_t arity() const { return n_; }
  std::size_t dim() const { return d_; }
  ScalarMode mode() const { return mode_; }

  /// Adds c·e_out to the bracket of the basis tuple.
  void add_bracket(const Tuple& in, std::size_t out, const Scalar& c);
  void set_bracket(const Tuple& in, const Vector& out);

  /// Bracket of basis vectors, as a sparse coordinate vector.
  const SparseVector& bracket_sparse(const Tuple& in) const;
  Vector bracket(const Tuple& in) const;
  /// Multilinear extension to arbitrary vectors.
  Vector bracket(const std::vector<Vector>& args) const;

  /// The bracket as a linear map (k^d)^⊗n → k^d.
  const TensorOperator& structure() const { return op_; }
  /// Nonzero brackets keyed by basis tuple, in lexicographic order.
  std::vector<std::pair<Tuple, SparseVector>> nonzero_brackets() const;

  bool certified() const { return certified_; }
  void set_certified(bool c) { certified_ = c; }

  friend bool operator==(const NLeibnizAlgebra& a, const NLeibnizAlgebra& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.op_ == b.op_;
  }

 private:
  std::size_t n_ = 2;
  std::size_t d_ = 1;
  ScalarMode mode_ = ScalarMode::exact;
  TensorOperator op_;
  bool certified_ = false;
};

struct CentralNLeibnizAlgebra {
  NLeibnizAlgebra algebra;
  Vector central;
};

VerificationReport check_fundamental_identity(const NLeibnizAlgebra& a);

/// Throws input_not_certified unless a is certified or passes the check.
void require_certified(const NLeibnizAlgebra& a);

NLeibnizAlgebra nbracket_from_leibniz(const NLeibnizAlgebra& leibniz, std::size_t n);
NLeibnizAlgebra extend_bracket_by_leibniz(const NLeibnizAlgebra& leibniz, const NLeibnizAlgebra& b);

/// Binary bracket on the (n−1)-th tensor power, indexed row-major.
NLeibnizAlgebra fundamental_leibniz(const NLeibnizAlgebra& a);
CentralNLeibnizAlgebra fundamental_leibniz(const CentralNLeibnizAlgebra& a);

/// Matrix of x ↦ [x, y1, …, y_{n−1}].
TensorOperator ad(const NLeibnizAlgebra& a, const std::vector<Vector>& y);
TensorOperator ad_basis(const NLeibnizAlgebra& a, const Tuple& y);

VerificationReport is_derivation(const NLeibnizAlgebra& a, const TensorOperator& d);

/// Exponential of a d×d map: exact needs D^d = 0, float sums the series.
TensorOperator exp_map(const TensorOperator& d, ScalarMode mode);
TensorOperator exp_ad(const NLeibnizAlgebra& a, const std::vector<Vector>& y, ScalarMode mode);

/// Index 0 is the adjoined unit (1,0); index i+1 is (0,e_i).
CentralNLeibnizAlgebra adjoin_unit(const NLeibnizAlgebra& a);

std::vector<Vector> central_elements(const NLeibnizAlgebra& a);
/// Witness of a non-vanishing bracket with z in some slot, if any.
std::optional<nlohmann::json> centrality_witness(const NLeibnizAlgebra& a, const Vector& z);
bool is_central(const NLeibnizAlgebra& a, const Vector& z);
void require_central(const CentralNLeibnizAlgebra& a);

VerificationReport is_homomorphism(const NLeibnizAlgebra& a, const NLeibnizAlgebra& b, const TensorOperator& phi);

/// [x1,…,xn]^op = [xn,…,x1].
NLeibnizAlgebra reversed(const NLeibnizAlgebra& a);
CentralNLeibnizAlgebra reversed(const CentralNLeibnizAlgebra& a);

/// Transport of structure along an invertible φ: [x…]' = φ[φ⁻¹x1,…].
NLeibnizAlgebra transport(const NLeibnizAlgebra& a, const TensorOperator& phi);

SparseVector to_sparse(const Vector& v);
Vector to_dense(const SparseVector& v, std::size_t d, ScalarMode mode = ScalarMode::exact);
Vector apply_map(const TensorOperator& op, const Vector& v);

}  // namespace braidforge
