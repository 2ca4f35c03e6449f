#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qturn::cli {

enum ExitCode : int { kPass = 0, kAssertFailure = 1, kUsage = 2, kNonConvergence = 3 };

// Full command line (args[0] is the program name). Output goes to out/err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qturn::cli
