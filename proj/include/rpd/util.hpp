#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rpd {

// Rounding of fractional vertex counts. Parameters like alpha arrive as
// doubles, so alpha*n may sit one ulp away from an integer; the nudge keeps
// ceil/floor from flipping on representation error.
inline long long ceil_count(double x) {
    return static_cast<long long>(std::ceil(x - 1e-9));
}

inline long long floor_count(double x) {
    return static_cast<long long>(std::floor(x + 1e-9));
}

inline long long round_count(double x) {
    return std::llround(x);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace rpd
