#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fqw::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

// Runs the command line `args` (args[0] is the program name) and writes to out/err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqw::cli
