#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace halfsph::cli {

enum ExitCode { Ok = 0, Failure = 1, Refuted = 2, Inconclusive = 3 };

/// Runs one command line (argv[0] is the program name) and writes the report to `out`.
/// Diagnostics that are not part of the report go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfsph::cli
