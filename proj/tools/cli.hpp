#pragma once

// Command-line front end: validate, verify, search, oracle, report.
// Exit codes: 0 success, 1 input error, 2 mathematical failure, 3 resource
// refusal.

#include <ostream>
#include <string>
#include <vector>

namespace logcap::cli {

inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kMathFailure = 2;
inline constexpr int kRefused = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logcap::cli
