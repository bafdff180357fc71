#pragma once

#include <cmath>
#include <limits>

namespace coarse {

// Absolute tolerance for every floating-point comparison in the library.
// Integer model spaces are exact; cone metrics are irrational.
inline constexpr double kTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool leq(double a, double b) { return a <= b + kTol; }
inline bool lt(double a, double b) { return a < b - kTol; }
inline bool approx_eq(double a, double b) { return std::fabs(a - b) <= kTol; }

}  // namespace coarse
