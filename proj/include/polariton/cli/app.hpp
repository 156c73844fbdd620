#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polariton::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2, kVerificationFailed = 3 };

// Entry point of the polariton tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polariton::cli
