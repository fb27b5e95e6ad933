#pragma once

#include <numbers>

namespace sfwm::constants {

inline constexpr double kSpeedOfLight = 2.99792458e8;   // m/s
inline constexpr double kFreeSpaceImpedance = 376.730;  // Ohm
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace sfwm::constants
