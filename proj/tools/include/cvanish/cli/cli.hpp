#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cvanish::cli {

/// Exit codes: 0 success / all requested conditions hold, 1 a condition fails,
/// 2 usage or data error.
enum ExitCode : int { kOk = 0, kConditionFails = 1, kUsageError = 2 };

/// Runs one command line (without the program name). If CURVATURE_VANISH_CATALOG
/// names a file, it is applied as a catalog override first.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvanish::cli
