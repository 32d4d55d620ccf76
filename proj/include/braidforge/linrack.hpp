#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "braidforge/nleibniz.hpp"
#include "braidforge/nrack.hpp"
#include "braidforge/report.hpp"
#include "braidforge/tensor.hpp"

namespace braidforge {

/// Finite-dimensional coalgebra: Δ : [c] → [c,c], ε : [c] → [1].
class Coalgebra {
 public:
  Coalgebra() = default;
  Coalgebra(std::size_t dim, TensorOperator delta, TensorOperator epsilon);

  std::size_t dim() const { return dim_; }
  const TensorOperator& delta() const { return delta_; }
  const TensorOperator& epsilon() const { return epsilon_; }
  bool cocommutative() const { return cocommutative_; }

  friend bool operator==(const Coalgebra& a, const Coalgebra& b) {
    return a.dim_ == b.dim_ && a.delta_ == b.delta_ && a.epsilon_ == b.epsilon_;
  }

 private:
  std::size_t dim_ = 1;
  TensorOperator delta_;
  TensorOperator epsilon_;
  bool cocommutative_ = false;
};

VerificationReport check_coalgebra(const Coalgebra& c);

/// k[X]: Δx = x⊗x, εx = 1.
Coalgebra linearize_set(std::size_t m);
/// k⊕L with index 0 = (1,0): Δ(1,0) = (1,0)⊗(1,0),
/// Δ(0,x) = (0,x)⊗(1,0) + (1,0)⊗(0,x), ε(λ,x) = λ.
Coalgebra kplus_coalgebra(std::size_t d);
/// C^⊗k flattened to one factor of dimension c^k.
Coalgebra tensor_power(const Coalgebra& c, std::size_t k);
/// Iterated coproduct [c] → [c]^legs (legs = 1 gives Id).
TensorOperator coproduct_power(const Coalgebra& c, std::size_t legs);

/// Bracket and inverse bracket [c]^n → [c]; arity 2 is a linear rack.
struct LinearNRack {
  Coalgebra base;
  std::size_t arity = 2;
  TensorOperator bracket;
  TensorOperator inv_bracket;
  bool certified = false;
};
using LinearRack = LinearNRack;

VerificationReport check_linear_nrack(const LinearNRack& l);
void require_valid(const LinearNRack& l);

LinearNRack linearize_nrack(const FiniteNRack& t);

/// Basis vectors that are group-like (Δe = e⊗e, εe = 1); the search is
/// restricted to the stored basis.
std::vector<std::size_t> group_like_elements(const Coalgebra& c);
FiniteNRack induced_nrack(const LinearNRack& l);

LinearNRack linear_nrack_from_linear_rack(const LinearRack& r, std::size_t n);
LinearRack linear_rack_on_tensor_power(const LinearNRack& l);
LinearNRack linear_nrack_from_nleibniz(const NLeibnizAlgebra& a);

/// (R^◁, (R^◁)⁻¹) on C⊗C.
std::pair<TensorOperator, TensorOperator> lebed_operator(const LinearRack& r);
/// The Yang–Baxter operator on C^⊗(n−1) assembled directly from ⟨⟩.
TensorOperator tensor_power_yb_operator(const LinearNRack& l);

/// Coalgebra map intertwining both rack operations.
VerificationReport is_linear_rack_homomorphism(const TensorOperator& f, const LinearRack& a, const LinearRack& b);

/// k[X^(n−1)] → k[X]^⊗(n−1); identity on row-major indices.
TensorOperator psi_map(std::size_t m, std::size_t n);

}  // namespace braidforge
