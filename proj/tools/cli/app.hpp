#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apnforge::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apnforge::cli
