#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imex::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kInfeasible = 3, kInstability = 4 };

/// Runs the command line tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imex::cli
