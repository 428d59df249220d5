#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superstyle::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoFailure = 2,
  kInconsistent = 3,
  kSchema = 4,
};

// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superstyle::cli
