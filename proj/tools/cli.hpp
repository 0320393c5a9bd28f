#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetvar::cli {

enum ExitCode : int {
  ok = 0,
  usage_error = 1,
  precondition_violation = 2,
  not_found_within_bounds = 3,
  check_failed = 4,
};

/// Runs `jv` with args (program name excluded). `in` supplies the expression
/// when the positional argument is omitted.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

} // namespace jetvar::cli
