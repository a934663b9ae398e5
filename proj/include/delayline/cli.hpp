#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace delayline::cli {

enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kDisagreement = 2,
  kUsageError = 3,
  kIoError = 4,
  kInvalidInput = 5,
  kResourceLimit = 6,
};

// Runs one command. args[0] is the program name. JSON goes to `out`,
// diagnostics and --verbose tables to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace delayline::cli
