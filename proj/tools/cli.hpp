#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace optfbp::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kRuntime = 2 };

/// Runs the command line tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optfbp::cli
