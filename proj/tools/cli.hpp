#pragma once

#include <string>
#include <vector>

namespace fink::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kNegative = 2 };

struct Outcome {
  int exit_code = kSuccess;
  std::string out;
  std::string err;
};

/// Runs one command line. `args` excludes the program name.
Outcome run(const std::vector<std::string>& args);

/// Runs argv and writes the outcome to stdout/stderr.
int dispatch(int argc, const char* const* argv);

}  // namespace fink::cli
