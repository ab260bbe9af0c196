#pragma once

#include <cmath>

namespace circleform {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wraps an angle to [0, 2*pi).
inline double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod rounding can land exactly on 2*pi
  return w;
}

// Wraps an angular difference to (-pi, pi].
inline double wrap_signed(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w > kPi) w -= kTwoPi;
  if (w <= -kPi) w += kTwoPi;
  return w;
}

// Counterclockwise offset from a to b, in [0, 2*pi).
inline double ccw_delta(double a, double b) { return wrap_angle(b - a); }

// Unsigned angular distance, in [0, pi].
inline double angle_distance(double a, double b) { return std::abs(wrap_signed(a - b)); }

}  // namespace circleform
