#include "braidforge/commands.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "braidforge/documents.hpp"
#include "braidforge/json_util.hpp"
#include "braidforge/linrack.hpp"
#include "braidforge/nleibniz.hpp"
#include "braidforge/nrack.hpp"
#include "braidforge/setsol.hpp"
#include "braidforge/ybops.hpp"

namespace braidforge {

using nlohmann::json;

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::cap_exceeded:
    case ErrorCode::dimension_cap_exceeded:
    case ErrorCode::carrier_too_large: return ExitCode::cap_exceeded;
    case ErrorCode::verdict_disagreement: return ExitCode::internal;
    default: return ExitCode::input_error;
  }
}

json error_to_json(const Error& e) {
  return {{"error", error_code_name(e.code())}, {"message", e.what()}, {"witness", e.witness()}};
}

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::schema_error, msg); }

class ParamReader {
 public:
  explicit ParamReader(const Params& p) : p_(p) {}

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    auto it = p_.find(key);
    if (it == p_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> count(const std::string& key) {
    auto t = text(key);
    if (!t) return std::nullopt;
    try {
      std::size_t used = 0;
      const auto v = std::stoull(*t, &used);
      if (used == t->size() && (*t)[0] != '-') return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    schema("parameter " + key + " must be a nonnegative integer");
  }
  std::size_t require_count(const std::string& key) {
    auto v = count(key);
    if (!v) schema("missing parameter " + key);
    return *v;
  }
  bool flag(const std::string& key) {
    auto t = text(key);
    if (!t || *t == "false" || *t == "0") return false;
    if (*t == "true" || *t == "1") return true;
    schema("parameter " + key + " must be true or false");
  }
  Side side(Side fallback = Side::right) {
    auto t = text("side");
    if (!t) return fallback;
    if (*t == "right") return Side::right;
    if (*t == "left") return Side::left;
    schema("parameter side must be right or left");
  }
  void finish() const {
    for (const auto& [k, v] : p_)
      if (!used_.count(k)) schema("unknown parameter " + k);
  }

 private:
  const Params& p_;
  std::set<std::string> used_;
};

Side doc_side(const json& doc) {
  const std::string s = doc.value("side", std::string("right"));
  if (s == "left") return Side::left;
  if (s != "right") schema("\"side\" must be \"right\" or \"left\"");
  return Side::right;
}

/// Factor count of an operator document: its "n" field, else the domain rank.
std::size_t doc_arity(const json& doc, const TensorOperator& op) {
  if (doc.contains("n")) {
    if (!doc.at("n").is_number_unsigned()) schema("\"n\" must be a nonnegative integer");
    return doc.at("n").get<std::size_t>();
  }
  return op.domain().rank();
}

json op_doc(const TensorOperator& op, std::size_t n, Side side = Side::right) {
  json j = operator_to_json(op);
  j["n"] = n;
  j["side"] = side_name(side);
  j["certified"] = false;
  return j;
}

VerificationReport yb_as_report(const YBReport& r, const std::string& subject) {
  VerificationReport rep;
  rep.subject = subject;
  Check eq;
  eq.name = equation_name(r.equation);
  eq.status = r.holds ? CheckStatus::pass : CheckStatus::fail;
  if (!r.holds) eq.witness = r.witness_detail;
  eq.elapsed_ms = r.elapsed_ms;
  rep.add(std::move(eq));
  Check inv;
  inv.name = "invertible";
  inv.status = r.invertible ? CheckStatus::pass : CheckStatus::fail;
  rep.add(std::move(inv));
  return rep;
}

YBReport verify_operator(const TensorOperator& op, std::size_t n, Side side, bool allow_large) {
  if (n < 2) throw Error(ErrorCode::shape_mismatch, "operator needs at least two factors");
  return n == 2 ? verify_ybe(op, allow_large) : verify_nybe(op, n, side, allow_large);
}

// -- check ----------------------------------------------------------------------

json check_single(const json& doc, bool& passed) {
  const DocKind kind = document_kind(doc);
  VerificationReport rep;
  json extra = json::object();
  switch (kind) {
    case DocKind::nleibniz: {
      const NLeibnizAlgebra a = nleibniz_from_json(doc);
      rep = check_fundamental_identity(a);
      if (auto z = central_from_json(doc))
        rep.add(timed_check("central", [&] { return centrality_witness(a, *z); }));
      break;
    }
    case DocKind::nrack: rep = check_nrack(nrack_from_json(doc)); break;
    case DocKind::group: {
      rep.subject = "group";
      Check c;
      c.name = "group_axioms";
      try {
        group_from_json(doc);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::input_invalid) throw;
        c.status = CheckStatus::fail;
        c.witness = error_to_json(e);
      }
      rep.add(std::move(c));
      break;
    }
    case DocKind::coalgebra: rep = check_coalgebra(coalgebra_from_json(doc)); break;
    case DocKind::linear_nrack: rep = check_linear_nrack(linear_nrack_from_json(doc)); break;
    case DocKind::vector_nrack: {
      const VectorNRack r = vector_nrack_from_json(doc);
      rep = r.validation();
      rep.subject = "vector_nrack";
      rep.append(verify_tensor_embedding(r.algebra()), "embedding.");
      break;
    }
    case DocKind::op: {
      const TensorOperator op = operator_document(doc);
      if (doc.value("role", std::string()) == "eta") {
        const NLeibnizAlgebra a = nleibniz_from_json(doc.at("source"));
        auto [eta, r] = eta_intertwiner(a);
        rep = r;
        rep.add(timed_check("matches_source", [&]() -> std::optional<json> {
          if (auto c = first_difference(eta, op)) return json{{"column", *c}};
          return std::nullopt;
        }));
        break;
      }
      if (op.domain().total() != op.codomain().total()) {
        rep.subject = "operator";
        Check c;
        c.name = "equation";
        c.status = CheckStatus::skipped;
        c.note = "not a square operator";
        rep.add(std::move(c));
        break;
      }
      const YBReport yb = verify_operator(op, doc_arity(doc, op), doc_side(doc), false);
      rep = yb_as_report(yb, "operator");
      extra["yb"] = yb.to_json();
      break;
    }
    case DocKind::set_map: {
      const SetNMap s = set_map_from_json(doc);
      const SolutionProfile p = check_set_nsolution(s);
      rep.subject = "set_map";
      Check b;
      b.name = "bijective";
      b.status = p.is_bijective ? CheckStatus::pass : CheckStatus::fail;
      rep.add(std::move(b));
      Check eq;
      const bool right = s.side() == Side::right;
      eq.name = right ? "satisfies_right" : "satisfies_left";
      eq.status = (right ? p.satisfies_right : p.satisfies_left) ? CheckStatus::pass : CheckStatus::fail;
      const auto& w = right ? p.right_witness : p.left_witness;
      if (w) eq.witness = json{{"tuple", *w}};
      rep.add(std::move(eq));
      extra["profile"] = p.to_json();
      extra["label"] = p.label(s.side());
      break;
    }
  }
  passed = rep.passed();
  json out = rep.to_json();
  out["kind"] = kind_name(kind);
  for (auto& [k, v] : extra.items()) out[k] = v;
  return out;
}

// -- build ------------------------------------------------------------------------

using Builder = std::function<json(const json& doc, const json& with, ParamReader& p)>;

struct Construction {
  DocKind input;
  Builder build;
};

const json& require_with(const json& with, DocKind kind) {
  if (with.is_null()) schema(std::string("construction needs a second input of kind ") + kind_name(kind));
  if (document_kind(with) != kind) schema(std::string("second input must be of kind ") + kind_name(kind));
  return with;
}

std::size_t operator_n(const json& doc, const TensorOperator& op, ParamReader& p) {
  if (auto n = p.count("n")) return *n;
  return doc_arity(doc, op);
}

std::multimap<std::string, Construction> make_constructions() {
  std::multimap<std::string, Construction> c;
  auto add = [&](const std::string& name, DocKind kind, Builder b) { c.emplace(name, Construction{kind, std::move(b)}); };
  using K = DocKind;

  // n-Leibniz algebras
  add("nbracket-from-leibniz", K::nleibniz, [](const json& d, const json&, ParamReader& p) {
    return nleibniz_to_json(nbracket_from_leibniz(nleibniz_from_json(d), p.require_count("n")));
  });
  add("extend-bracket-by-leibniz", K::nleibniz, [](const json& d, const json& w, ParamReader&) {
    return nleibniz_to_json(
        extend_bracket_by_leibniz(nleibniz_from_json(d), nleibniz_from_json(require_with(w, K::nleibniz))));
  });
  add("fundamental-leibniz", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    if (central_from_json(d)) return nleibniz_to_json(fundamental_leibniz(central_nleibniz_from_json(d)));
    return nleibniz_to_json(fundamental_leibniz(nleibniz_from_json(d)));
  });
  add("adjoin-unit", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    return nleibniz_to_json(adjoin_unit(nleibniz_from_json(d)));
  });
  add("reverse", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    if (central_from_json(d)) return nleibniz_to_json(reversed(central_nleibniz_from_json(d)));
    return nleibniz_to_json(reversed(nleibniz_from_json(d)));
  });
  add("transport", K::nleibniz, [](const json& d, const json& w, ParamReader&) {
    return nleibniz_to_json(transport(nleibniz_from_json(d), operator_document(require_with(w, K::op))));
  });
  add("nrack-from-nleibniz", K::nleibniz, [](const json& d, const json&, ParamReader& p) {
    ScalarMode mode = document_mode(d);
    if (auto s = p.text("scalars")) mode = document_mode(json{{"scalars", *s}});
    return vector_nrack_to_json(nrack_from_nleibniz(nleibniz_from_json(d), mode));
  });
  add("lnr-from-nleibniz", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    return linear_nrack_to_json(linear_nrack_from_nleibniz(nleibniz_from_json(d)));
  });
  add("r-central", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    return op_doc(r_from_central_leibniz(central_nleibniz_from_json(d)), 2);
  });
  add("r-tilde", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    const IffResult r = r_tilde_iff_leibniz(nleibniz_from_json(d));
    json j = op_doc(r.op, 2);
    j["certified"] = r.yb.holds && r.yb.invertible;
    j["reports"] = {{"yb", r.yb.to_json()}, {"identity", r.identity.to_json()}};
    return j;
  });
  add("r1", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    return op_doc(r1_from_nleibniz(nleibniz_from_json(d)), 2);
  });
  add("r2", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    return op_doc(r2_from_nleibniz(nleibniz_from_json(d)), 2);
  });
  add("eta", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    const NLeibnizAlgebra a = nleibniz_from_json(d);
    auto [eta, rep] = eta_intertwiner(a);
    json j = operator_to_json(eta);
    j["role"] = "eta";
    j["source"] = nleibniz_to_json(a);
    j["certified"] = rep.passed();
    j["reports"] = {{"eta", rep.to_json()}};
    return j;
  });
  add("nyb-central", K::nleibniz, [](const json& d, const json&, ParamReader& p) {
    const CentralNLeibnizAlgebra cl = central_nleibniz_from_json(d);
    const Side side = p.side();
    const std::size_t n = cl.algebra.arity();
    if (p.flag("inverse")) {
      if (side != Side::right) schema("inverse is available for the right form only");
      return op_doc(nyb_inverse_from_central_nleibniz(cl), n, side);
    }
    return op_doc(nyb_from_central_nleibniz(cl, side), n, side);
  });
  add("nyb-iff", K::nleibniz, [](const json& d, const json&, ParamReader&) {
    const NLeibnizAlgebra a = nleibniz_from_json(d);
    const IffResult r = nyb_iff_nleibniz(a);
    json j = op_doc(r.op, a.arity());
    j["certified"] = r.yb.holds && r.yb.invertible;
    j["reports"] = {{"yb", r.yb.to_json()}, {"identity", r.identity.to_json()}};
    return j;
  });

  // groups
  add("conjugation-nrack", K::group, [](const json& d, const json&, ParamReader& p) {
    return nrack_to_json(conjugation_nrack(group_from_json(d), p.require_count("n")));
  });
  add("group-algebra-nyb", K::group, [](const json& d, const json&, ParamReader& p) {
    const std::size_t n = p.require_count("n");
    return op_doc(group_algebra_nyb(group_from_json(d), n), n);
  });

  // n-racks
  add("nrack-from-rack", K::nrack, [](const json& d, const json&, ParamReader& p) {
    return nrack_to_json(nrack_from_rack(nrack_from_json(d), p.require_count("n")));
  });
  add("extend-rack-by-op", K::nrack, [](const json& d, const json& w, ParamReader&) {
    return nrack_to_json(extend_rack_by_op(nrack_from_json(d), nrack_from_json(require_with(w, K::nrack))));
  });
  add("combine-compatible", K::nrack, [](const json& d, const json& w, ParamReader&) {
    return nrack_to_json(combine_compatible(nrack_from_json(d), nrack_from_json(require_with(w, K::nrack))));
  });
  add("rack-from-nrack", K::nrack, [](const json& d, const json&, ParamReader&) {
    return nrack_to_json(rack_from_nrack(nrack_from_json(d)));
  });
  add("krack-from-power", K::nrack, [](const json& d, const json&, ParamReader& p) {
    const std::size_t k = p.require_count("k"), n = p.require_count("n");
    return nrack_to_json(krack_from_power(nrack_from_json(d), k, n));
  });
  add("reverse", K::nrack, [](const json& d, const json&, ParamReader&) {
    return nrack_to_json(reversed(nrack_from_json(d)));
  });
  add("linearize", K::nrack, [](const json& d, const json&, ParamReader&) {
    return linear_nrack_to_json(linearize_nrack(nrack_from_json(d)));
  });
  add("solution-from-nrack", K::nrack, [](const json& d, const json&, ParamReader&) {
    return set_map_to_json(solution_from_nrack(nrack_from_json(d)));
  });

  // linear n-racks
  add("linear-nrack-from-linear-rack", K::linear_nrack, [](const json& d, const json&, ParamReader& p) {
    return linear_nrack_to_json(linear_nrack_from_linear_rack(linear_nrack_from_json(d), p.require_count("n")));
  });
  add("tensor-power-rack", K::linear_nrack, [](const json& d, const json&, ParamReader&) {
    return linear_nrack_to_json(linear_rack_on_tensor_power(linear_nrack_from_json(d)));
  });
  add("induced-nrack", K::linear_nrack, [](const json& d, const json&, ParamReader&) {
    return nrack_to_json(induced_nrack(linear_nrack_from_json(d)));
  });
  add("lebed", K::linear_nrack, [](const json& d, const json&, ParamReader& p) {
    auto [r, rinv] = lebed_operator(linear_nrack_from_json(d));
    return op_doc(p.flag("inverse") ? rinv : r, 2);
  });
  add("nyb-lnr", K::linear_nrack, [](const json& d, const json&, ParamReader& p) {
    const LinearNRack l = linear_nrack_from_json(d);
    auto [s, sinv] = nyb_from_linear_nrack(l);
    return op_doc(p.flag("inverse") ? sinv : s, l.arity);
  });
  add("tensor-power-yb", K::linear_nrack, [](const json& d, const json&, ParamReader&) {
    return op_doc(tensor_power_yb_operator(linear_nrack_from_json(d)), 2);
  });

  // operators
  add("sn-from-r", K::op, [](const json& d, const json&, ParamReader& p) {
    const std::size_t n = p.require_count("n");
    return op_doc(nyb_from_ybe(operator_document(d), n), n);
  });
  add("stilde-from-s", K::op, [](const json& d, const json&, ParamReader& p) {
    const TensorOperator s = operator_document(d);
    return op_doc(ybe_from_nyb(s, operator_n(d, s, p)), 2);
  });
  add("conjugate", K::op, [](const json& d, const json& w, ParamReader& p) {
    const TensorOperator s = operator_document(d);
    const std::size_t n = operator_n(d, s, p);
    return op_doc(conjugate_nyb(s, operator_document(require_with(w, K::op)), n), n, doc_side(d));
  });
  add("reverse", K::op, [](const json& d, const json&, ParamReader& p) {
    const TensorOperator s = operator_document(d);
    const std::size_t n = operator_n(d, s, p);
    return op_doc(reverse_conjugate(s, n), n, doc_side(d) == Side::right ? Side::left : Side::right);
  });

  // set maps
  add("nsolution-from-solution", K::set_map, [](const json& d, const json&, ParamReader& p) {
    return set_map_to_json(nsolution_from_solution(set_map_from_json(d), p.require_count("n")));
  });
  add("solution-from-nsolution", K::set_map, [](const json& d, const json&, ParamReader&) {
    return set_map_to_json(solution_from_nsolution(set_map_from_json(d)));
  });
  add("reverse", K::set_map, [](const json& d, const json&, ParamReader&) {
    return set_map_to_json(reverse_conjugate(set_map_from_json(d)));
  });
  return c;
}

const std::multimap<std::string, Construction>& constructions() {
  static const auto c = make_constructions();
  return c;
}

}  // namespace

CommandResult cmd_check(const json& doc) {
  if (doc.is_array()) {
    json results = json::array();
    std::size_t passed = 0, failed = 0;
    ExitCode worst = ExitCode::pass;
    for (const auto& d : doc) {
      try {
        bool ok = false;
        results.push_back(check_single(d, ok));
        ok ? ++passed : ++failed;
        if (!ok) worst = std::max(worst, ExitCode::fail);
      } catch (const Error& e) {
        results.push_back(error_to_json(e));
        ++failed;
        worst = std::max(worst, exit_code_for(e.code()));
      }
    }
    return {json{{"results", std::move(results)}, {"passed", passed}, {"failed", failed}}, worst};
  }
  bool ok = false;
  json out = check_single(doc, ok);
  return {std::move(out), ok ? ExitCode::pass : ExitCode::fail};
}

std::vector<std::string> construction_names() {
  std::vector<std::string> names;
  for (const auto& [name, c] : constructions())
    if (names.empty() || names.back() != name) names.push_back(name);
  return names;
}

CommandResult cmd_build(const std::string& construction, const json& doc, const json& with, const Params& params,
                        bool recheck) {
  const auto [lo, hi] = constructions().equal_range(construction);
  if (lo == hi) throw Error(ErrorCode::unknown_construction, "unknown construction " + construction);
  const DocKind kind = document_kind(doc);
  const Construction* chosen = nullptr;
  std::vector<std::string> accepted;
  for (auto it = lo; it != hi; ++it) {
    accepted.push_back(kind_name(it->second.input));
    if (it->second.input == kind) chosen = &it->second;
  }
  if (!chosen)
    throw Error(ErrorCode::schema_error, construction + " does not accept " + kind_name(kind) + " input",
                json{{"accepts", accepted}});
  ParamReader reader(params);
  json out = chosen->build(doc, with, reader);
  reader.finish();

  json provenance = doc.contains("provenance") && doc.at("provenance").is_array() ? doc.at("provenance") : json::array();
  json step{{"construction", construction}, {"input", kind_name(kind)}, {"params", params}};
  if (!with.is_null()) step["with"] = kind_name(document_kind(with));
  provenance.push_back(std::move(step));
  out["provenance"] = std::move(provenance);

  ExitCode exit = ExitCode::pass;
  if (recheck) {
    CommandResult r = cmd_check(out);
    out["recheck"] = r.output;
    if (r.exit == ExitCode::pass)
      out["certified"] = true;
    else
      exit = ExitCode::fail;
  }
  return {std::move(out), exit};
}

CommandResult cmd_verify(const std::string& equation, const json& doc, bool allow_pre, bool allow_large,
                         const Params& params) {
  const DocKind kind = document_kind(doc);
  ParamReader reader(params);
  if (equation == "ybe" || equation == "nybe-right" || equation == "nybe-left") {
    if (kind != DocKind::op) throw Error(ErrorCode::shape_mismatch, equation + " needs an operator document");
    const TensorOperator op = operator_document(doc);
    YBReport r;
    if (equation == "ybe") {
      r = verify_ybe(op, allow_large);
    } else {
      const std::size_t n = operator_n(doc, op, reader);
      if (n < 2) throw Error(ErrorCode::shape_mismatch, "operator needs at least two factors");
      r = verify_nybe(op, n, equation == "nybe-left" ? Side::left : Side::right, allow_large);
    }
    reader.finish();
    const bool ok = r.holds && (r.invertible || allow_pre);
    return {r.to_json(), ok ? ExitCode::pass : ExitCode::fail};
  }
  if (equation == "set-ybe" || equation == "set-nybe") {
    if (kind != DocKind::set_map) throw Error(ErrorCode::shape_mismatch, equation + " needs a set_map document");
    const SetNMap s = set_map_from_json(doc);
    if (equation == "set-ybe" && s.arity() != 2) throw Error(ErrorCode::shape_mismatch, "set-ybe needs arity 2");
    reader.finish();
    const SolutionProfile p = check_set_nsolution(s);
    const bool right = s.side() == Side::right;
    const bool holds = right ? p.satisfies_right : p.satisfies_left;
    const auto& w = right ? p.right_witness : p.left_witness;
    json out{{"equation", equation == "set-ybe" ? std::string("set_ybe")
                                                : std::string("set_n_ybe_") + side_name(s.side())},
             {"n", s.arity()},
             {"size", s.size()},
             {"holds", holds},
             {"invertible", p.is_bijective},
             {"label", p.label(s.side())},
             {"profile", p.to_json()}};
    out["witness"] = w ? json(*w) : json(nullptr);
    const bool ok = holds && (p.is_bijective || allow_pre);
    return {std::move(out), ok ? ExitCode::pass : ExitCode::fail};
  }
  throw Error(ErrorCode::schema_error, "unknown equation " + equation,
              json{{"accepts", {"ybe", "nybe-right", "nybe-left", "set-ybe", "set-nybe"}}});
}

CommandResult cmd_enumerate(std::size_t m, std::size_t n, const std::string& filter, bool dump) {
  return {enumerate_tables(m, n, parse_filter(filter), dump).to_json(), ExitCode::pass};
}

CommandResult cmd_demo() {
  json steps = json::array();
  bool all = true;
  auto step = [&](const std::string& name, bool ok, json detail = nullptr) {
    json s{{"name", name}, {"status", ok ? "pass" : "fail"}};
    if (!detail.is_null()) s["detail"] = std::move(detail);
    steps.push_back(std::move(s));
    all = all && ok;
  };

  NLeibnizAlgebra t3(3, 3);
  t3.add_bracket({0, 1, 1}, 2, Scalar(1));
  const VerificationReport fi = check_fundamental_identity(t3);
  step("t3.fundamental_identity", fi.passed());
  t3.set_certified(fi.passed());

  const CentralNLeibnizAlgebra bar = adjoin_unit(t3);
  step("t3_bar.central", is_central(bar.algebra, bar.central), json{{"dim", bar.algebra.dim()}});

  const TensorOperator s = nyb_from_central_nleibniz(bar);
  const YBReport sy = verify_nybe(s, 3);
  step("s.n_ybe_right", sy.holds && sy.invertible, sy.to_json());

  const YBReport left = verify_nybe(reverse_conjugate(s, 3), 3, Side::left);
  step("s.reverse_is_left", left.holds);

  const TensorOperator st = ybe_from_nyb(s, 3);
  const YBReport ry = verify_ybe(st);
  step("s_tilde.ybe", ry.holds && ry.invertible, ry.to_json());

  const TensorOperator lebed = r_from_central_leibniz(fundamental_leibniz(bar));
  step("diagram.central_leibniz", st == lebed);

  const TensorOperator r2 = r2_from_nleibniz(t3);
  const TensorOperator via_lnr = lebed_operator(linear_rack_on_tensor_power(linear_nrack_from_nleibniz(t3))).first;
  step("diagram.r2_linear_rack", r2 == via_lnr);

  const auto eta = eta_intertwiner(t3);
  step("diagram.eta", eta.second.passed());

  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const FiniteNRack rack = conjugation_nrack(s3, 2);
  step("diagram.set_rack",
       nsolution_from_solution(solution_from_nrack(rack), 3) == solution_from_nrack(nrack_from_rack(rack, 3)));
  const FiniteNRack t = conjugation_nrack(s3, 3);
  step("diagram.set_nrack",
       solution_from_nsolution(solution_from_nrack(t)) == solution_from_nrack(rack_from_nrack(t)));

  json out{{"pipeline", {"T3", "T3_bar", "S", "S_tilde"}}, {"steps", std::move(steps)}, {"status", all ? "pass" : "fail"}};
  return {std::move(out), all ? ExitCode::pass : ExitCode::fail};
}

}  // namespace braidforge
