#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bridgerank::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Parses args (without the program name) and runs one subcommand.
// Returns the process exit code: 0 success, 2 input error, 3 numerical error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bridgerank::cli
