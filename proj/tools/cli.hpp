#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcir::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidation = 1,
    kIo = 2,
    kToleranceFailure = 3,
};

/// Runs the command line `args` (without the program name). Human-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcir::cli
