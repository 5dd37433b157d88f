#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantube {

enum ExitCode { kOk = 0, kUsage = 1, kMalformed = 2, kPrecondition = 3 };

/// Runs one command line (without the program name). Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cantube
