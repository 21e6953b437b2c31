#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bell3::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Parses decimal radians or the forms "pi", "pi/N", "Mpi", "Mpi/N" with an
/// optional sign (M and N may be decimal). Returns nullopt on malformed input.
std::optional<double> parse_angle(std::string_view text);

/// Shortest round-trip-safe representation with 15 significant digits,
/// '.' decimal separator regardless of locale.
std::string format_number(double value);

/// Runs one command line (args[0] is the program name). Writes reports to
/// `out`, diagnostics to `err`, and returns 0, 1 or 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bell3::cli
