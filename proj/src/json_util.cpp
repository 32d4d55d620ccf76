#include "braidforge/json_util.hpp"

#include "braidforge/error.hpp"

namespace braidforge {

nlohmann::json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return s.str();
  return s.to_double();
}

Scalar scalar_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_number()) return Scalar::from_double(j.get<double>());
  throw Error(ErrorCode::schema_error, "scalar must be a \"p/q\" string or a number");
}

nlohmann::json vector_to_json(const Vector& v) {
  auto j = nlohmann::json::array();
  for (const auto& x : v) j.push_back(scalar_to_json(x));
  return j;
}

nlohmann::json sparse_to_json(const SparseVector& v) {
  auto j = nlohmann::json::array();
  for (const auto& [i, x] : v) j.push_back({i, scalar_to_json(x)});
  return j;
}

nlohmann::json tuple_to_json(const std::vector<std::size_t>& t) { return nlohmann::json(t); }

nlohmann::json operator_to_json(const TensorOperator& op) {
  nlohmann::json j;
  j["kind"] = "operator";
  j["shape"] = op.domain().dims();
  j["codomain_shape"] = op.codomain().dims();
  j["scalars"] = op.mode() == ScalarMode::exact ? "exact" : "float";
  auto entries = nlohmann::json::array();
  for (const auto& [r, c, v] : op.entries()) entries.push_back({r, c, scalar_to_json(v)});
  j["entries"] = std::move(entries);
  return j;
}

TensorOperator operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("entries"))
    throw Error(ErrorCode::schema_error, "operator needs \"shape\" and \"entries\"");
  try {
    TensorShape domain(j.at("shape").get<std::vector<std::size_t>>());
    TensorShape codomain =
        j.contains("codomain_shape") ? TensorShape(j.at("codomain_shape").get<std::vector<std::size_t>>()) : domain;
    const bool flt = j.value("scalars", std::string("exact")) == "float";
    TensorOperator op(domain, codomain);
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::schema_error, "operator entry must be [row,col,value]");
      Scalar v = scalar_from_json(e[2]);
      if (flt) v = v.to_mode(ScalarMode::float64);
      const auto row = e[0].get<Index>(), col = e[1].get<Index>();
      if (row >= codomain.total() || col >= domain.total())
        throw Error(ErrorCode::schema_error, "operator entry index out of range");
      op.add(row, col, v);
    }
    return op;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::schema_error, std::string("operator: ") + ex.what());
  }
}

}  // namespace braidforge
