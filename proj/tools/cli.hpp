#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flatlie::cli {

/// Exit codes: 0 pass, 1 domain failure, 2 usage, I/O or parse failure.
enum ExitCode : int { kPass = 0, kDomainFailure = 1, kInputFailure = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatlie::cli
