#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shorent::cli {

enum ExitCode : int { kSuccess = 0, kAlgorithmFailure = 1, kUsageError = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shorent::cli
