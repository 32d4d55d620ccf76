#pragma once

#include <string>

#include <json.hpp>

#include "braidforge/linalg.hpp"
#include "braidforge/tensor.hpp"

namespace braidforge {

/// Exact scalars serialize as "p/q" strings, float scalars as numbers.
nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vector& v);
nlohmann::json sparse_to_json(const SparseVector& v);
nlohmann::json tuple_to_json(const std::vector<std::size_t>& t);

/// {"shape","codomain_shape","entries":[[row,col,value],…]}
nlohmann::json operator_to_json(const TensorOperator& op);
TensorOperator operator_from_json(const nlohmann::json& j);

}  // namespace braidforge
