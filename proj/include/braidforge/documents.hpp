#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "braidforge/linrack.hpp"
#include "braidforge/nleibniz.hpp"
#include "braidforge/nrack.hpp"
#include "braidforge/setsol.hpp"
#include "braidforge/tensor.hpp"

namespace braidforge {

enum class DocKind { nleibniz, nrack, group, coalgebra, linear_nrack, op, set_map, vector_nrack };

const char* kind_name(DocKind k);
DocKind document_kind(const nlohmann::json& doc);

/// Parses JSON text; malformed input throws schema_error with the byte offset.
nlohmann::json parse_json_text(const std::string& text);

ScalarMode document_mode(const nlohmann::json& doc);
const char* mode_name(ScalarMode m);

/// {"kind":"nleibniz","arity","dim","scalars","bracket":[{"in":[…],"out":{"j":c}}],"central"?}
NLeibnizAlgebra nleibniz_from_json(const nlohmann::json& doc);
std::optional<Vector> central_from_json(const nlohmann::json& doc);
CentralNLeibnizAlgebra central_nleibniz_from_json(const nlohmann::json& doc);
nlohmann::json nleibniz_to_json(const NLeibnizAlgebra& a, const Vector* central = nullptr);
nlohmann::json nleibniz_to_json(const CentralNLeibnizAlgebra& a);

/// {"kind":"nrack","size","arity","side","table":[[x1,…,xn,result],…]}; total.
FiniteNRack nrack_from_json(const nlohmann::json& doc);
nlohmann::json nrack_to_json(const FiniteNRack& t);

/// {"kind":"group","size","mul":[[…]]}
FiniteGroup group_from_json(const nlohmann::json& doc);
nlohmann::json group_to_json(const FiniteGroup& g);

/// {"kind":"coalgebra","dim","delta":entries,"epsilon":entries}
Coalgebra coalgebra_from_json(const nlohmann::json& doc);
nlohmann::json coalgebra_to_json(const Coalgebra& c);

/// {"kind":"linear_nrack","base":coalgebra,"arity","bracket":entries,"inv_bracket":entries}
LinearNRack linear_nrack_from_json(const nlohmann::json& doc);
nlohmann::json linear_nrack_to_json(const LinearNRack& l);

/// {"kind":"set_map","size","arity","side","map":[[x…,y…],…]}; total.
SetNMap set_map_from_json(const nlohmann::json& doc);
nlohmann::json set_map_to_json(const SetNMap& s);

/// {"kind":"vector_nrack","algebra":nleibniz,"scalars"}
VectorNRack vector_nrack_from_json(const nlohmann::json& doc);
nlohmann::json vector_nrack_to_json(const VectorNRack& r);

TensorOperator operator_document(const nlohmann::json& doc);

}  // namespace braidforge
