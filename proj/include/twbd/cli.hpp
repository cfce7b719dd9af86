#pragma once

#include <iosfwd>

namespace twbd {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitInputError = 2, kExitCapped = 3 };

// Runs the twbd command line; argv[0] is the program name.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace twbd
