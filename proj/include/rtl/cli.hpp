#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rtl {

enum ExitCode : int { kExitOk = 0, kExitCounterexample = 1, kExitMalformed = 2, kExitBudget = 3 };

/// Runs one command line (without the program name). Human output goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rtl
