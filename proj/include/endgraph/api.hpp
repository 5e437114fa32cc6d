#pragma once

// Command layer shared by the CLI, the python bindings and the output
// tests: every query is a (command, args) pair producing a JSON document.

#include <string>
#include <vector>

#include <json.hpp>

namespace endgraph::api {

struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what)
      : std::runtime_error(what), exitCode(code) {}
  int exitCode;  // 64 usage, 65 parse, 70 internal
};

/// Run one query.  Throws CommandError for usage/parse problems.
nlohmann::json run(const std::string& command, const std::vector<std::string>& args,
                   bool trace = false);

/// Exit code for a result: classification verdicts map Yes/No/Unknown to
/// 0/1/2; everything else is 0.
int exitCode(const nlohmann::json& result);

/// Stable human-readable rendering.
std::string renderText(const nlohmann::json& result);

}  // namespace endgraph::api
