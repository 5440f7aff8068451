#pragma once

// Command-line front end. Subcommands: identities, schur, vertex, tau,
// laxcheck, simulate. An INI file given with --config supplies defaults per
// subcommand section; flags on the command line take precedence.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "toda/opalg.hpp"

namespace toda::cli {

enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// {"schema": 1, "command": ..., "params": ..., "pass": ..., "checks": [...]}
nlohmann::json report_json(const std::string& command, const nlohmann::json& params, const Report& r);

/// Accepts "[3,1]", "3,1", "[]" and the empty-set sign.
Partition parse_partition(const std::string& text);

}  // namespace toda::cli
