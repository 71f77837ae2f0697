#pragma once

#include <cmath>

namespace koch {

inline const double kPi = std::acos(-1.0);
inline const double kSqrt3 = std::sqrt(3.0);
inline const double kLog3 = std::log(3.0);

// Similarity dimension of the curve, log_3 4.
inline const double kD = std::log(4.0) / std::log(3.0);

// Oscillation period in the log scale, 2*pi/log 3.
inline const double kP = 2.0 * kPi / std::log(3.0);

// Admissible neighborhood radii are (0, 3^{-1/2}].
inline const double kEpsMax = 1.0 / std::sqrt(3.0);

// Below this radius the tube formula is exact for the inner neighborhood;
// above it the neighborhood starts to swallow the region's core.
inline const double kEpsExact = 1.0 / (2.0 * std::sqrt(3.0));

// Area of the full region (unit side length).
inline const double kRegionArea = 2.0 * std::sqrt(3.0) / 5.0;

// Closed-form constants of the preliminary area:
//   V~ = eps^{2-D} 4^{-t} (C9 9^t + C3 3^t + C1) - eps^2 Q0,   t = {x}.
inline const double kC9 = 3.0 * std::sqrt(3.0) / 40.0;
inline const double kC3 = std::sqrt(3.0) / 2.0;
inline const double kC1 = std::acos(-1.0) / 18.0 - std::sqrt(3.0) / 6.0;
inline const double kQ0 = (std::acos(-1.0) / 3.0 + 2.0 * std::sqrt(3.0)) / 3.0;

}  // namespace koch
