#pragma once

#include <cstddef>
#include <utility>

#include "braidforge/linrack.hpp"
#include "braidforge/nleibniz.hpp"
#include "braidforge/nrack.hpp"
#include "braidforge/report.hpp"
#include "braidforge/tensor.hpp"

namespace braidforge {

/// Largest verification dimension d^(2n−1) accepted without allow_large.
/// Defaults to 2^20, or BRAIDFORGE_DIM_CAP when set.
Index dimension_cap();
void set_dimension_cap(Index cap);

/// d with d^n equal to the operator's (square) total dimension.
std::size_t factor_dim(const TensorOperator& op, std::size_t n);

YBReport verify_ybe(const TensorOperator& r, bool allow_large = false);
/// Right: apply P0, P_{n−1}, …, P0 against P_{n−1}, …, P0, P_{n−1}, where
/// P_p acts on factors [p, p+n). Left: P0, P1, …, P_{n−1}, P0 against
/// P_{n−1}, P0, P1, …, P_{n−1}.
YBReport verify_nybe(const TensorOperator& s, std::size_t n, Side side = Side::right, bool allow_large = false);

/// τ∘S∘τ with τ the full reversal of the n factors.
TensorOperator reverse_conjugate(const TensorOperator& s, std::size_t n);

/// R(x⊗y) = y⊗x + 𝟏⊗{x,y}.
TensorOperator r_from_central_leibniz(const CentralNLeibnizAlgebra& cl);

struct IffResult {
  TensorOperator op;
  YBReport yb;
  VerificationReport identity;
};

/// R̃ on (k⊕L)⊗(k⊕L); throws verdict_disagreement if the YBE verdict and
/// the Leibniz verdict differ.
IffResult r_tilde_iff_leibniz(const NLeibnizAlgebra& bracket);

/// Lebed operator of k⊕L^⊗(n−1).
TensorOperator r1_from_nleibniz(const NLeibnizAlgebra& a);
/// Lebed operator of the fundamental algebra of k⊕L, on (k⊕L)^⊗(n−1).
TensorOperator r2_from_nleibniz(const NLeibnizAlgebra& a);

/// η : k⊕L^⊗(n−1) → (k⊕L)^⊗(n−1) with its injectivity, homomorphism and
/// intertwining checks.
std::pair<TensorOperator, VerificationReport> eta_intertwiner(const NLeibnizAlgebra& a);

/// Right: S(x) = x2⊗…⊗xn⊗x1 + 𝟏^⊗(n−1)⊗[x]. Left (cl read as a left
/// algebra): S_l(x) = xn⊗x1⊗…⊗x_{n−1} + [x]⊗𝟏^⊗(n−1).
TensorOperator nyb_from_central_nleibniz(const CentralNLeibnizAlgebra& cl, Side side = Side::right);
/// xn⊗x1⊗…⊗x_{n−1} − [xn,x1,…,x_{n−1}]⊗𝟏^⊗(n−1).
TensorOperator nyb_inverse_from_central_nleibniz(const CentralNLeibnizAlgebra& cl);

/// S on (k⊕L)^⊗n; throws verdict_disagreement if the n-YBE verdict and
/// the fundamental-identity verdict differ.
IffResult nyb_iff_nleibniz(const NLeibnizAlgebra& bracket);

/// (S, S⁻¹) for a cocommutative linear n-rack.
std::pair<TensorOperator, TensorOperator> nyb_from_linear_nrack(const LinearNRack& l);

/// R applied at positions 0, 1, …, n−2 in turn.
TensorOperator nyb_from_ybe(const TensorOperator& r, std::size_t n, bool check_input = true);
/// S applied at positions n−2, …, 0 in turn, on (V^⊗(n−1))⊗².
TensorOperator ybe_from_nyb(const TensorOperator& s, std::size_t n, bool check_input = true);

/// (φ⁻¹)^⊗n ∘ S ∘ φ^⊗n.
TensorOperator conjugate_nyb(const TensorOperator& s, const TensorOperator& phi, std::size_t n);

/// S(g1⊗…⊗gn) = g2⊗…⊗gn⊗(gn⋯g2 g1 g2⁻¹⋯gn⁻¹) on k[G].
TensorOperator group_algebra_nyb(const FiniteGroup& g, std::size_t n);

}  // namespace braidforge
