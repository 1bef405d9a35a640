#pragma once

#include <string>

namespace polya {

/// Shortest decimal form that round-trips, capped at 12 significant digits.
std::string format_real(double x);

/// x rounded to 12 significant digits (what format_real prints).
double round_to_output(double x);

}  // namespace polya
