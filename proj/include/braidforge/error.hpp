#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace braidforge {

enum class ErrorCode {
  shape_mismatch,
  index_overflow,
  non_permutation,
  singular_matrix,
  division_by_zero,
  not_nilpotent,
  series_not_converged,
  exp_not_computable,
  input_not_certified,
  input_not_leibniz,
  derivation_precondition_failed,
  equivariance_failed,
  compatibility_failed,
  carrier_too_large,
  arity_mismatch,
  not_cocommutative,
  inverse_mismatch,
  not_closed,
  not_central,
  input_invalid,
  input_not_ybe,
  input_not_nybe,
  dimension_cap_exceeded,
  cap_exceeded,
  verdict_disagreement,
  singular_phi,
  schema_error,
  unknown_construction,
};

/// Stable kebab-case name, used in JSON error payloads.
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json witness = nullptr)
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  const nlohmann::json& witness() const { return witness_; }

 private:
  ErrorCode code_;
  nlohmann::json witness_;
};

}  // namespace braidforge
