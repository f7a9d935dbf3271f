#pragma once

#include <cstdio>
#include <string>

namespace steklov {

/// CSV cell format: 10 significant digits, locale-independent, diff-stable.
inline std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

/// Fixed 10 decimal places (header constants).
inline std::string fmt_fixed10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10f", v);
    return buf;
}

}  // namespace steklov
