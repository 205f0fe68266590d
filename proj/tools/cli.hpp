#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinorlz::cli {

enum ExitCode : int
{
  kOk = 0,
  kInvalidParameters = 2,
  kNumericalFailure = 3,
  kIoFailure = 4,
};

/// Parses `args` (without the program name) and runs one subcommand.
/// Results go to `out` unless --output is given; failures are reported on
/// `err` as a one-line JSON error record.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest-round-trip-safe formatting, 17 significant digits.
std::string format_number(double x);

} // namespace spinorlz::cli
