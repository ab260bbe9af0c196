#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

#include "circleform/angles.hpp"

namespace circleform {

using Point2 = Eigen::Vector2d;

// Tolerances shared across the library. Scenario scales range from meters to
// a few hundred meters, far above double-precision noise at these thresholds.
namespace tol {
inline constexpr double duplicate = 1e-9;  // meters, collocated-agent check
inline constexpr double collinear = 1e-9;  // scale-normalized cross product
inline constexpr double angle_eq = 1e-6;   // radians, goal-coincidence check
}  // namespace tol

// Invalid or inconsistent input (bad scenario file, constraint violation).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug rather than bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct PolarPoint {
  double r = 0.0;    // meters, >= 0
  double phi = 0.0;  // radians in [0, 2*pi)
};

struct Circle {
  Point2 center{0.0, 0.0};
  double radius = 0.0;  // meters, > 0

  Point2 point_at(double phi) const {
    return center + radius * Point2(std::cos(phi), std::sin(phi));
  }
  bool strictly_inside(const Point2& p) const { return (p - center).norm() < radius; }
};

inline PolarPoint to_polar(const Point2& p, const Point2& origin) {
  const Point2 d = p - origin;
  return {d.norm(), wrap_angle(std::atan2(d.y(), d.x()))};
}

}  // namespace circleform
