#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tautdr {

/// Exit codes: 0 success, 1 verdict failure, 2 usage error.
enum ExitCode { kExitOk = 0, kExitVerdictFailure = 1, kExitUsage = 2 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tautdr
