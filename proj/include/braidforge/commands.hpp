#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidforge/error.hpp"

namespace braidforge {

/// 0 pass, 1 verification failure, 2 input error, 3 cap exceeded, 4 internal.
enum class ExitCode : int { pass = 0, fail = 1, input_error = 2, cap_exceeded = 3, internal = 4 };

ExitCode exit_code_for(ErrorCode code);
nlohmann::json error_to_json(const Error& e);

struct CommandResult {
  nlohmann::json output;
  ExitCode exit = ExitCode::pass;
};

using Params = std::map<std::string, std::string>;

/// Runs every applicable axiom for the document's kind. An array of
/// documents gives {"results","passed","failed"}.
CommandResult cmd_check(const nlohmann::json& doc);

/// Known construction names, sorted.
std::vector<std::string> construction_names();

/// `with` is the second input of binary constructions (null when absent).
/// With recheck, the output is checked again and the report attached.
CommandResult cmd_build(const std::string& construction, const nlohmann::json& doc, const nlohmann::json& with,
                        const Params& params, bool recheck = false);

/// equation: ybe | nybe-right | nybe-left | set-ybe | set-nybe.
CommandResult cmd_verify(const std::string& equation, const nlohmann::json& doc, bool allow_pre, bool allow_large,
                         const Params& params = {});

CommandResult cmd_enumerate(std::size_t m, std::size_t n, const std::string& filter, bool dump);

/// T3 → T̄3 → S → S̃ with the algebra-side and set-side diagram checks.
CommandResult cmd_demo();

}  // namespace braidforge
