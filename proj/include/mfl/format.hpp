#pragma once

#include <string>

namespace mfl {

/// Shortest text that parses back to the same double.
std::string format_shortest(double value);

/// printf %.*g
std::string format_significant(double value, int digits);

/// printf %.*f
std::string format_fixed(double value, int decimals);

}  // namespace mfl
