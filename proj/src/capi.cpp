#include "braidforge/braidforge.h"

#include <new>
#include <string>

#include "braidforge/commands.hpp"
#include "braidforge/documents.hpp"
#include "braidforge/parallel.hpp"
#include "braidforge/report.hpp"
#include "braidforge/ybops.hpp"

using braidforge::CommandResult;
using braidforge::Error;
using braidforge::ErrorCode;
using nlohmann::json;

struct bf_context {
  std::string last_error;
  bool has_error = false;
};

struct bf_document {
  json value;
  std::string kind;
  std::string text;
};

struct bf_result {
  json value;
  std::string text;
};

namespace {

bf_status to_status(braidforge::ExitCode e) { return static_cast<bf_status>(static_cast<int>(e)); }

void set_error(bf_context* ctx, const json& err) {
  if (!ctx) return;
  ctx->last_error = err.dump();
  ctx->has_error = true;
}

/// Runs body, translating exceptions into statuses and the context error.
template <class Body>
bf_status guarded(bf_context* ctx, Body&& body) {
  if (ctx) ctx->has_error = false;
  try {
    return body();
  } catch (const Error& e) {
    set_error(ctx, braidforge::error_to_json(e));
    return to_status(braidforge::exit_code_for(e.code()));
  } catch (const std::bad_alloc&) {
    set_error(ctx, json{{"error", "out-of-memory"}, {"message", "allocation failed"}, {"witness", nullptr}});
    return BF_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    set_error(ctx, json{{"error", "internal"}, {"message", e.what()}, {"witness", nullptr}});
    return BF_INTERNAL_ERROR;
  }
}

bf_status emit(CommandResult r, bf_result** out) {
  *out = new bf_result{std::move(r.output), {}};
  return to_status(r.exit);
}

braidforge::Params read_params(const char* const* params, size_t count) {
  braidforge::Params p;
  for (size_t i = 0; i < count; ++i) {
    const std::string kv = params[i] ? params[i] : "";
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::schema_error, "parameter must be key=value: " + kv);
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return p;
}

std::size_t parse_count(const char* v) {
  const std::string s = v;
  std::size_t used = 0;
  const auto n = std::stoull(s, &used);
  if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
  return static_cast<std::size_t>(n);
}

}  // namespace

extern "C" {

const char* bf_version(void) { return "0.1.0"; }

bf_context* bf_context_new(void) { return new (std::nothrow) bf_context(); }

void bf_context_free(bf_context* ctx) { delete ctx; }

bf_status bf_context_set_option(bf_context* ctx, const char* key, const char* value) {
  if (!ctx || !key || !value) return BF_INVALID_ARGUMENT;
  return guarded(ctx, [&]() -> bf_status {
    const std::string k = key;
    try {
      if (k == "threads") {
        braidforge::set_worker_threads(std::max<std::size_t>(1, parse_count(value)));
      } else if (k == "timing") {
        braidforge::set_timing_enabled(parse_count(value) != 0);
      } else if (k == "dim_cap") {
        braidforge::set_dimension_cap(parse_count(value));
      } else if (k == "tolerance") {
        const double t = std::stod(value);
        if (!(t >= 0)) throw std::invalid_argument(value);
        braidforge::set_float_tolerance(t);
      } else {
        throw Error(ErrorCode::schema_error, "unknown option " + k);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::schema_error, "bad value for option " + k + ": " + value);
    }
    return BF_OK;
  });
}

const char* bf_context_last_error(const bf_context* ctx) {
  return ctx && ctx->has_error ? ctx->last_error.c_str() : nullptr;
}

bf_status bf_document_parse(bf_context* ctx, const char* json_text, bf_document** out) {
  if (!json_text || !out) return BF_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, [&]() -> bf_status {
    json v = braidforge::parse_json_text(json_text);
    std::string kind = v.is_array() ? "batch" : braidforge::kind_name(braidforge::document_kind(v));
    *out = new bf_document{std::move(v), std::move(kind), {}};
    return BF_OK;
  });
}

const char* bf_document_kind(const bf_document* doc) { return doc ? doc->kind.c_str() : nullptr; }

const char* bf_document_to_json(const bf_document* doc) {
  if (!doc) return nullptr;
  auto* d = const_cast<bf_document*>(doc);
  if (d->text.empty()) d->text = d->value.dump();
  return d->text.c_str();
}

void bf_document_free(bf_document* doc) { delete doc; }

bf_status bf_check_document(bf_context* ctx, const bf_document* doc, bf_result** out) {
  if (!doc || !out) return BF_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, [&] { return emit(braidforge::cmd_check(doc->value), out); });
}

bf_status bf_build(bf_context* ctx, const char* construction, const bf_document* doc, const bf_document* with,
                   const char* const* params, size_t param_count, int recheck, bf_result** out) {
  if (!construction || !doc || !out || (param_count && !params)) return BF_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, [&] {
    const json w = with ? with->value : json(nullptr);
    return emit(braidforge::cmd_build(construction, doc->value, w, read_params(params, param_count), recheck != 0),
                out);
  });
}

bf_status bf_verify(bf_context* ctx, const char* equation, const bf_document* doc, int allow_pre, int allow_large,
                    const char* const* params, size_t param_count, bf_result** out) {
  if (!equation || !doc || !out || (param_count && !params)) return BF_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, [&] {
    return emit(braidforge::cmd_verify(equation, doc->value, allow_pre != 0, allow_large != 0,
                                       read_params(params, param_count)),
                out);
  });
}

bf_status bf_enumerate(bf_context* ctx, size_t m, size_t n, const char* filter, int dump, bf_result** out) {
  if (!filter || !out) return BF_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, [&] { return emit(braidforge::cmd_enumerate(m, n, filter, dump != 0), out); });
}

bf_status bf_demo(bf_context* ctx, bf_result** out) {
  if (!out) return BF_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, [&] { return emit(braidforge::cmd_demo(), out); });
}

const char* bf_construction_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : braidforge::construction_names()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

const char* bf_result_json(bf_result* result, int indent) {
  if (!result) return nullptr;
  result->text = result->value.dump(indent < 0 ? -1 : indent);
  return result->text.c_str();
}

void bf_result_free(bf_result* result) { delete result; }

}  // extern "C"
