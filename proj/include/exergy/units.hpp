#pragma once

namespace exergy {

inline constexpr double kCelsiusOffset = 273.15;

constexpr double celsius_to_kelvin(double t_c) { return t_c + kCelsiusOffset; }
constexpr double kelvin_to_celsius(double t_k) { return t_k - kCelsiusOffset; }

}  // namespace exergy
