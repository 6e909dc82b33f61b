#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cf {

// Exit codes of the command-line front end.
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

// Runs one command. `args` excludes the program name. The report goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cf
