#include "braidforge/error.hpp"

namespace braidforge {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::shape_mismatch: return "shape-mismatch";
    case ErrorCode::index_overflow: return "index-overflow";
    case ErrorCode::non_permutation: return "non-permutation";
    case ErrorCode::singular_matrix: return "singular-matrix";
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::not_nilpotent: return "not-nilpotent";
    case ErrorCode::series_not_converged: return "series-not-converged";
    case ErrorCode::exp_not_computable: return "exp-not-computable";
    case ErrorCode::input_not_certified: return "input-not-certified";
    case ErrorCode::input_not_leibniz: return "input-not-Leibniz";
    case ErrorCode::derivation_precondition_failed: return "derivation-precondition-failed";
    case ErrorCode::equivariance_failed: return "equivariance-failed";
    case ErrorCode::compatibility_failed: return "compatibility-failed";
    case ErrorCode::carrier_too_large: return "carrier-too-large";
    case ErrorCode::arity_mismatch: return "arity-mismatch";
    case ErrorCode::not_cocommutative: return "not-cocommutative";
    case ErrorCode::inverse_mismatch: return "inverse-mismatch";
    case ErrorCode::not_closed: return "not-closed";
    case ErrorCode::not_central: return "not-central";
    case ErrorCode::input_invalid: return "input-invalid";
    case ErrorCode::input_not_ybe: return "input-not-ybe";
    case ErrorCode::input_not_nybe: return "input-not-nybe";
    case ErrorCode::dimension_cap_exceeded: return "dimension-cap-exceeded";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
    case ErrorCode::verdict_disagreement: return "verdict-disagreement";
    case ErrorCode::singular_phi: return "singular-phi";
    case ErrorCode::schema_error: return "schema-error";
    case ErrorCode::unknown_construction: return "unknown-construction";
  }
  return "unknown";
}

}  // namespace braidforge
