#pragma once

// Command-line front end. Subcommands: test, rho-table, efficiency, slope,
// power, null-dist.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgof/alternatives.hpp"

namespace mgof::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNumericError = 3,
  kInternalError = 4,
};

/// Runs the tool on argv-style arguments (without the program name) and
/// returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Alternative from its JSON description on N cells:
///   {"probs": [...]}
///   {"pattern": "half_split" | "cosine" | "custom", "delta": δ | "epsilon": ε,
///    "k": K, "deltas": [...]}
std::vector<double> parse_alternative(const nlohmann::json& j, std::int64_t cells);

/// Rejects keys outside `allowed` and checks "version" equals 1.
void check_config(const nlohmann::json& j, const std::vector<std::string>& allowed,
                  bool versioned = true);

}  // namespace mgof::cli
