// braidforge: command-line front end over the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "braidforge/braidforge.h"

namespace {

struct ContextDeleter {
  void operator()(bf_context* c) const { bf_context_free(c); }
};
struct DocumentDeleter {
  void operator()(bf_document* d) const { bf_document_free(d); }
};
struct ResultDeleter {
  void operator()(bf_result* r) const { bf_result_free(r); }
};
using Context = std::unique_ptr<bf_context, ContextDeleter>;
using Document = std::unique_ptr<bf_document, DocumentDeleter>;
using Result = std::unique_ptr<bf_result, ResultDeleter>;

int exit_of(bf_status s) { return s <= BF_INTERNAL_ERROR ? static_cast<int>(s) : BF_INTERNAL_ERROR; }

void report_error(bf_context* ctx) {
  const char* err = bf_context_last_error(ctx);
  std::cerr << (err ? err : R"({"error":"internal","message":"unknown failure"})") << "\n";
}

bool read_file(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

/// Loads and parses a document; prints the error and returns null on failure.
Document load(bf_context* ctx, const std::string& path, int& exit_code) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << R"({"error":"io","message":"cannot read )" << path << "\"}\n";
    exit_code = BF_INPUT_ERROR;
    return nullptr;
  }
  bf_document* doc = nullptr;
  const bf_status s = bf_document_parse(ctx, text.c_str(), &doc);
  if (s != BF_OK) {
    report_error(ctx);
    exit_code = exit_of(s);
    return nullptr;
  }
  return Document(doc);
}

/// Writes the result (if any) to stdout or the output file; returns the exit code.
int finish(bf_context* ctx, bf_status s, bf_result* raw, const std::string& out_path) {
  Result r(raw);
  if (!r) {
    report_error(ctx);
    return exit_of(s);
  }
  const std::string text = std::string(bf_result_json(r.get(), 2)) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << R"({"error":"io","message":"cannot write )" << out_path << "\"}\n";
      return BF_INPUT_ERROR;
    }
    out << text;
  }
  return exit_of(s);
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify n-Leibniz algebras, n-racks and (n-)Yang-Baxter operators"};
  app.require_subcommand(1);

  std::size_t threads = 0;
  bool timing = false;
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads (default: BRAIDFORGE_THREADS or all cores)");
  app.add_flag("--timing", timing, "Report elapsed times");
  app.add_option("-o,--output", out_path, "Write the JSON result to a file");

  std::string file, with_file, name, filter;
  std::vector<std::string> params;
  bool recheck = false, allow_pre = false, allow_large = false, dump = false;
  std::size_t m = 0, n = 0;

  auto* check = app.add_subcommand("check", "Run every axiom for the document's kind");
  check->add_option("FILE", file, "Document (or array of documents); - for stdin")->required();

  auto* build = app.add_subcommand("build", "Apply a construction");
  build->add_option("CONSTRUCTION", name, "Construction name (see `list`)")->required();
  build->add_option("FILE", file, "Input document; - for stdin")->required();
  build->add_option("--with", with_file, "Second input document");
  build->add_option("--param", params, "Parameter k=v")->allow_extra_args(false);
  build->add_flag("--recheck", recheck, "Check the output again and attach the report");

  auto* verify = app.add_subcommand("verify", "Verify a (set-theoretical) Yang-Baxter equation");
  verify->add_option("EQUATION", name, "ybe | nybe-right | nybe-left | set-ybe | set-nybe")->required();
  verify->add_option("FILE", file, "Operator or set_map document; - for stdin")->required();
  verify->add_flag("--allow-pre", allow_pre, "Accept non-invertible solutions");
  verify->add_flag("--allow-large", allow_large, "Lift the verification dimension cap");
  verify->add_option("--param", params, "Parameter k=v (n=…)")->allow_extra_args(false);

  auto* enumerate = app.add_subcommand("enumerate", "Count operation tables on a small set");
  enumerate->add_option("--m", m, "Carrier size")->required();
  enumerate->add_option("--n", n, "Arity")->required();
  enumerate->add_option("--filter", filter, "nrack | nsolution | nshelf")->required();
  enumerate->add_flag("--dump", dump, "Include the tables");

  auto* demo = app.add_subcommand("demo", "Run the worked pipeline with its diagram checks");
  auto* list = app.add_subcommand("list", "List construction names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return BF_INPUT_ERROR;
  }

  Context ctx(bf_context_new());
  if (!ctx) return BF_INTERNAL_ERROR;
  if (threads == 0) {
    if (const char* env = std::getenv("BRAIDFORGE_THREADS")) {
      if (bf_context_set_option(ctx.get(), "threads", env) != BF_OK) {
        report_error(ctx.get());
        return BF_INPUT_ERROR;
      }
    }
  } else {
    bf_context_set_option(ctx.get(), "threads", std::to_string(threads).c_str());
  }
  if (timing) bf_context_set_option(ctx.get(), "timing", "1");

  if (*list) {
    std::cout << bf_construction_names();
    return 0;
  }

  int code = 0;
  bf_result* res = nullptr;
  bf_status s = BF_OK;
  const auto param_ptrs = c_strings(params);

  if (*check) {
    Document doc = load(ctx.get(), file, code);
    if (!doc) return code;
    s = bf_check_document(ctx.get(), doc.get(), &res);
  } else if (*build) {
    Document doc = load(ctx.get(), file, code);
    if (!doc) return code;
    Document with;
    if (!with_file.empty()) {
      with = load(ctx.get(), with_file, code);
      if (!with) return code;
    }
    s = bf_build(ctx.get(), name.c_str(), doc.get(), with.get(), param_ptrs.data(), param_ptrs.size(), recheck ? 1 : 0,
                 &res);
  } else if (*verify) {
    Document doc = load(ctx.get(), file, code);
    if (!doc) return code;
    s = bf_verify(ctx.get(), name.c_str(), doc.get(), allow_pre ? 1 : 0, allow_large ? 1 : 0, param_ptrs.data(),
                  param_ptrs.size(), &res);
  } else if (*enumerate) {
    s = bf_enumerate(ctx.get(), m, n, filter.c_str(), dump ? 1 : 0, &res);
  } else if (*demo) {
    s = bf_demo(ctx.get(), &res);
  }
  return finish(ctx.get(), s, res, out_path);
}
