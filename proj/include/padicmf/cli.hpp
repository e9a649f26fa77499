#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padicmf {

/// Exit codes: 0 success, 1 a verified identity failed, 2 configuration or input error.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitConfig = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicmf
