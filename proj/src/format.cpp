#include "mfl/format.hpp"

#include <charconv>
#include <cstdio>

namespace mfl {

std::string format_shortest(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string format_significant(double value, int digits) {
    char buf[64];
    int n = std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string format_fixed(double value, int decimals) {
    char buf[400];
    int n = std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace mfl
