#pragma once

#include <iosfwd>
#include <string>

namespace qrws::cli {

/// Entry point behind the qrws binary. Returns the process exit code:
/// 0 success, 1 usage or I/O error, 2 verification failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses an angle token: a decimal radian value, or a multiple of pi written
/// as [coefficient]pi[/divisor], e.g. "pi", "-pi/2", "3pi/2", "0.5pi".
/// Throws std::invalid_argument on anything else.
double parse_angle(const std::string& token);

/// Shortest decimal form with up to 17 significant digits; round-trips the
/// exact double value.
std::string format17(double value);

} // namespace qrws::cli
