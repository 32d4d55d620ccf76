#include "braidforge/documents.hpp"

#include <map>

#include "braidforge/error.hpp"
#include "braidforge/json_util.hpp"

namespace braidforge {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::schema_error, msg); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::size_t count_field(const json& doc, const char* key, std::size_t min = 0) {
  const json& v = field(doc, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    schema(std::string("\"") + key + "\" must be a nonnegative integer");
  const auto n = v.get<std::size_t>();
  if (n < min) schema(std::string("\"") + key + "\" must be at least " + std::to_string(min));
  return n;
}

std::size_t as_index(const json& v, std::size_t bound, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) schema(std::string(what) + " must be a nonnegative integer");
  const auto i = v.get<std::size_t>();
  if (i >= bound) schema(std::string(what) + " out of range");
  return i;
}

Side side_field(const json& doc) {
  const std::string s = doc.value("side", std::string("right"));
  if (s == "right") return Side::right;
  if (s == "left") return Side::left;
  schema("\"side\" must be \"right\" or \"left\"");
}

Scalar in_mode(const json& v, ScalarMode mode) {
  Scalar s = scalar_from_json(v);
  if (mode == ScalarMode::exact && !s.is_exact()) schema("exact documents need \"p/q\" or integer scalars");
  return s.to_mode(mode);
}

TensorOperator entries_operator(const json& entries, TensorShape domain, TensorShape codomain, ScalarMode mode) {
  if (!entries.is_array()) schema("entries must be an array");
  TensorOperator op(domain, codomain);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) schema("entry must be [row, col, value]");
    const Index row = as_index(e[0], static_cast<std::size_t>(codomain.total()), "entry row");
    const Index col = as_index(e[1], static_cast<std::size_t>(domain.total()), "entry column");
    op.add(row, col, in_mode(e[2], mode));
  }
  return op.to_mode(mode);
}

json entries_json(const TensorOperator& op) {
  json out = json::array();
  for (const auto& [r, c, v] : op.entries()) out.push_back({r, c, scalar_to_json(v)});
  return out;
}

}  // namespace

const char* kind_name(DocKind k) {
  switch (k) {
    case DocKind::nleibniz: return "nleibniz";
    case DocKind::nrack: return "nrack";
    case DocKind::group: return "group";
    case DocKind::coalgebra: return "coalgebra";
    case DocKind::linear_nrack: return "linear_nrack";
    case DocKind::op: return "operator";
    case DocKind::set_map: return "set_map";
    case DocKind::vector_nrack: return "vector_nrack";
  }
  return "?";
}

DocKind document_kind(const json& doc) {
  if (!doc.is_object()) schema("document must be a JSON object");
  const json& k = field(doc, "kind");
  if (!k.is_string()) schema("\"kind\" must be a string");
  static const std::map<std::string, DocKind> kinds = {
      {"nleibniz", DocKind::nleibniz},   {"nrack", DocKind::nrack},         {"group", DocKind::group},
      {"coalgebra", DocKind::coalgebra}, {"linear_nrack", DocKind::linear_nrack}, {"operator", DocKind::op},
      {"set_map", DocKind::set_map},     {"vector_nrack", DocKind::vector_nrack}};
  auto it = kinds.find(k.get<std::string>());
  if (it == kinds.end()) schema("unknown document kind \"" + k.get<std::string>() + "\"");
  return it->second;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::schema_error, std::string("malformed JSON: ") + e.what(), json{{"byte", e.byte}});
  }
}

ScalarMode document_mode(const json& doc) {
  const std::string s = doc.is_object() ? doc.value("scalars", std::string("exact")) : std::string("exact");
  if (s == "exact") return ScalarMode::exact;
  if (s == "float") return ScalarMode::float64;
  schema("\"scalars\" must be \"exact\" or \"float\"");
}

const char* mode_name(ScalarMode m) { return m == ScalarMode::exact ? "exact" : "float"; }

// -- nleibniz ----------------------------------------------------------------

NLeibnizAlgebra nleibniz_from_json(const json& doc) {
  try {
    const std::size_t n = count_field(doc, "arity", 2);
    const std::size_t d = count_field(doc, "dim", 1);
    const ScalarMode mode = document_mode(doc);
    NLeibnizAlgebra a(n, d, mode);
    const json& br = doc.contains("bracket") ? doc.at("bracket") : json::array();
    if (!br.is_array()) schema("\"bracket\" must be an array");
    for (const auto& b : br) {
      const json& in = field(b, "in");
      if (!in.is_array() || in.size() != n) schema("bracket \"in\" must list arity indices");
      Tuple t;
      for (const auto& i : in) t.push_back(as_index(i, d, "bracket index"));
      const json& out = field(b, "out");
      if (!out.is_object()) schema("bracket \"out\" must map basis indices to scalars");
      for (const auto& [key, val] : out.items()) {
        std::size_t j = 0;
        try {
          std::size_t used = 0;
          j = std::stoul(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          schema("bracket output key \"" + key + "\" is not an index");
        }
        if (j >= d) schema("bracket output index out of range");
        a.add_bracket(t, j, in_mode(val, mode));
      }
    }
    return a;
  } catch (const json::exception& e) {
    schema(std::string("nleibniz: ") + e.what());
  }
}

std::optional<Vector> central_from_json(const json& doc) {
  if (!doc.contains("central") || doc.at("central").is_null()) return std::nullopt;
  const json& c = doc.at("central");
  const std::size_t d = count_field(doc, "dim", 1);
  if (!c.is_array() || c.size() != d) schema("\"central\" must be a vector of length dim");
  const ScalarMode mode = document_mode(doc);
  Vector v;
  for (const auto& x : c) v.push_back(in_mode(x, mode));
  return v;
}

CentralNLeibnizAlgebra central_nleibniz_from_json(const json& doc) {
  auto z = central_from_json(doc);
  if (!z) throw Error(ErrorCode::not_central, "document has no \"central\" element");
  return {nleibniz_from_json(doc), *z};
}

json nleibniz_to_json(const NLeibnizAlgebra& a, const Vector* central) {
  json j;
  j["kind"] = "nleibniz";
  j["arity"] = a.arity();
  j["dim"] = a.dim();
  j["scalars"] = mode_name(a.mode());
  json br = json::array();
  for (const auto& [in, out] : a.nonzero_brackets()) {
    json o = json::object();
    for (const auto& [i, c] : out) o[std::to_string(i)] = scalar_to_json(c);
    br.push_back({{"in", in}, {"out", o}});
  }
  j["bracket"] = std::move(br);
  if (central) j["central"] = vector_to_json(*central);
  j["certified"] = a.certified();
  return j;
}

json nleibniz_to_json(const CentralNLeibnizAlgebra& a) { return nleibniz_to_json(a.algebra, &a.central); }

// -- nrack / group -------------------------------------------------------------

FiniteNRack nrack_from_json(const json& doc) {
  try {
    const std::size_t m = count_field(doc, "size", 1);
    const std::size_t n = count_field(doc, "arity", 2);
    const Side side = side_field(doc);
    const TensorShape shape = TensorShape::power(m, n);
    if (shape.total() > kDefaultCarrierCap) throw Error(ErrorCode::carrier_too_large, "operation table too large");
    const json& rows = field(doc, "table");
    if (!rows.is_array()) schema("\"table\" must be an array");
    std::vector<std::uint32_t> table(static_cast<std::size_t>(shape.total()), 0);
    std::vector<bool> seen(table.size(), false);
    for (const auto& r : rows) {
      if (!r.is_array() || r.size() != n + 1) schema("table rows must be [x1, …, xn, result]");
      Tuple x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(as_index(r[i], m, "table argument"));
      const auto flat = static_cast<std::size_t>(shape.flatten(x));
      if (seen[flat]) throw Error(ErrorCode::schema_error, "duplicate table row", json{{"tuple", x}});
      seen[flat] = true;
      table[flat] = static_cast<std::uint32_t>(as_index(r[n], m, "table result"));
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
      if (!seen[c]) throw Error(ErrorCode::schema_error, "table is not total", json{{"missing", shape.unflatten(c)}});
    return FiniteNRack(m, n, std::move(table), side);
  } catch (const json::exception& e) {
    schema(std::string("nrack: ") + e.what());
  }
}

json nrack_to_json(const FiniteNRack& t) {
  json rows = json::array();
  for (std::size_t c = 0; c < t.cells(); ++c) {
    json r = t.unflatten(c);
    r.push_back(t.at(c));
    rows.push_back(std::move(r));
  }
  return {{"kind", "nrack"}, {"size", t.size()}, {"arity", t.arity()}, {"side", side_name(t.side())},
          {"table", std::move(rows)}, {"certified", t.certified()}};
}

FiniteGroup group_from_json(const json& doc) {
  try {
    const std::size_t m = count_field(doc, "size", 1);
    const json& mul = field(doc, "mul");
    if (!mul.is_array() || mul.size() != m) schema("\"mul\" must have size rows");
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& r : mul) {
      if (!r.is_array() || r.size() != m) schema("\"mul\" rows must have size entries");
      std::vector<std::uint32_t> row;
      for (const auto& v : r) row.push_back(static_cast<std::uint32_t>(as_index(v, m, "product")));
      rows.push_back(std::move(row));
    }
    return FiniteGroup(std::move(rows));
  } catch (const json::exception& e) {
    schema(std::string("group: ") + e.what());
  }
}

json group_to_json(const FiniteGroup& g) {
  return {{"kind", "group"}, {"size", g.size()}, {"mul", g.table()}};
}

// -- coalgebra / linear n-rack -------------------------------------------------

Coalgebra coalgebra_from_json(const json& doc) {
  try {
    const std::size_t c = count_field(doc, "dim", 1);
    const ScalarMode mode = document_mode(doc);
    TensorOperator delta = entries_operator(field(doc, "delta"), TensorShape({c}), TensorShape({c, c}), mode);
    TensorOperator eps = entries_operator(field(doc, "epsilon"), TensorShape({c}), TensorShape({1}), mode);
    return Coalgebra(c, std::move(delta), std::move(eps));
  } catch (const json::exception& e) {
    schema(std::string("coalgebra: ") + e.what());
  }
}

json coalgebra_to_json(const Coalgebra& c) {
  return {{"kind", "coalgebra"},
          {"dim", c.dim()},
          {"scalars", mode_name(c.delta().mode())},
          {"delta", entries_json(c.delta())},
          {"epsilon", entries_json(c.epsilon())}};
}

LinearNRack linear_nrack_from_json(const json& doc) {
  try {
    LinearNRack l;
    l.base = coalgebra_from_json(field(doc, "base"));
    l.arity = count_field(doc, "arity", 2);
    const ScalarMode mode = doc.contains("scalars") ? document_mode(doc) : document_mode(doc.at("base"));
    const TensorShape dom = TensorShape::power(l.base.dim(), l.arity);
    if (dom.total() > kMaxShapeTotal) throw Error(ErrorCode::index_overflow, "bracket domain too large");
    const TensorShape cod({l.base.dim()});
    l.bracket = entries_operator(field(doc, "bracket"), dom, cod, mode);
    l.inv_bracket = entries_operator(field(doc, "inv_bracket"), dom, cod, mode);
    return l;
  } catch (const json::exception& e) {
    schema(std::string("linear_nrack: ") + e.what());
  }
}

json linear_nrack_to_json(const LinearNRack& l) {
  return {{"kind", "linear_nrack"},
          {"base", coalgebra_to_json(l.base)},
          {"arity", l.arity},
          {"scalars", mode_name(l.bracket.mode())},
          {"bracket", entries_json(l.bracket)},
          {"inv_bracket", entries_json(l.inv_bracket)},
          {"certified", l.certified}};
}

// -- set maps --------------------------------------------------------------------

SetNMap set_map_from_json(const json& doc) {
  try {
    const std::size_t m = count_field(doc, "size", 1);
    const std::size_t n = count_field(doc, "arity", 2);
    const Side side = side_field(doc);
    const TensorShape shape = TensorShape::power(m, n);
    if (shape.total() > kDefaultCarrierCap) throw Error(ErrorCode::carrier_too_large, "set map too large");
    const json& rows = field(doc, "map");
    if (!rows.is_array()) schema("\"map\" must be an array");
    std::vector<std::uint32_t> table(static_cast<std::size_t>(shape.total()), 0);
    std::vector<bool> seen(table.size(), false);
    for (const auto& r : rows) {
      if (!r.is_array() || r.size() != 2 * n) schema("map rows must be [x1, …, xn, y1, …, yn]");
      Tuple x, y;
      for (std::size_t i = 0; i < n; ++i) x.push_back(as_index(r[i], m, "map argument"));
      for (std::size_t i = 0; i < n; ++i) y.push_back(as_index(r[n + i], m, "map value"));
      const auto flat = static_cast<std::size_t>(shape.flatten(x));
      if (seen[flat]) throw Error(ErrorCode::schema_error, "duplicate map row", json{{"tuple", x}});
      seen[flat] = true;
      table[flat] = static_cast<std::uint32_t>(shape.flatten(y));
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
      if (!seen[c]) throw Error(ErrorCode::schema_error, "map is not total", json{{"missing", shape.unflatten(c)}});
    return SetNMap(m, n, std::move(table), side);
  } catch (const json::exception& e) {
    schema(std::string("set_map: ") + e.what());
  }
}

json set_map_to_json(const SetNMap& s) {
  json rows = json::array();
  for (std::size_t c = 0; c < s.cells(); ++c) {
    json r = s.unflatten(c);
    for (auto y : s.unflatten(s.at(c))) r.push_back(y);
    rows.push_back(std::move(r));
  }
  return {{"kind", "set_map"}, {"size", s.size()}, {"arity", s.arity()}, {"side", side_name(s.side())},
          {"map", std::move(rows)}};
}

// -- vector n-racks / operators ---------------------------------------------------

VectorNRack vector_nrack_from_json(const json& doc) {
  const NLeibnizAlgebra a = nleibniz_from_json(field(doc, "algebra"));
  return nrack_from_nleibniz(a, document_mode(doc));
}

json vector_nrack_to_json(const VectorNRack& r) {
  return {{"kind", "vector_nrack"}, {"algebra", nleibniz_to_json(r.algebra())}, {"scalars", mode_name(r.mode())},
          {"certified", r.validation().passed()}};
}

TensorOperator operator_document(const json& doc) {
  const TensorOperator op = operator_from_json(doc);
  if (document_mode(doc) == ScalarMode::exact) {
    for (const auto& e : doc.at("entries"))
      if (e[2].is_number_float()) schema("exact documents need \"p/q\" or integer scalars");
  }
  return op;
}

}  // namespace braidforge
