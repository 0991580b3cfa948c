#pragma once

#include <string>
#include <vector>

namespace mzop {

/// Runs one CLI invocation (args exclude the program name).
/// Exit codes: 0 success, 2 argument errors, 1 runtime errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace mzop
