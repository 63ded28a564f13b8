#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fdassoc::cli {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitInputError = 2;

/// Runs the command line `args` (without the program name). Tables go to
/// `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdassoc::cli
