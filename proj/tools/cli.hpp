#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stijl::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kBadArguments = 1;
inline constexpr int kInputError = 2;
inline constexpr int kIoError = 3;
inline constexpr int kOracleMismatch = 4;

// Runs the command line `args` (without the program name). Results go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stijl::cli
