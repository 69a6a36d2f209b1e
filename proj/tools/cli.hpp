#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zeroset::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kCapacity = 3,
  kIo = 4,
};

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zeroset::cli
