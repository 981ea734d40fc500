#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geoclust::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kViolation = 2, kMismatch = 3 };

// args excludes the program name. Errors go to err as one JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoclust::cli
