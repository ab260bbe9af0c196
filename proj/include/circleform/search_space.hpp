#pragma once

#include "circleform/geometry.hpp"
#include "circleform/types.hpp"

namespace circleform {

enum class SearchSpaceKind { Cone, HalfPlane, Line, Full };

// Angular region of admissible travel directions at an agent's position.
// The region sweeps counterclockwise from alpha_start over width:
//   Cone      width in (0, pi), bounded by the outward normals of the two
//             supporting edges at a convex-layer vertex
//   HalfPlane width = pi, bounded by the line through the apex perpendicular
//             to the carrier line of a collinear terminal layer
//   Line      the two rays alpha_start and alpha_start + pi only
//   Full      the whole turn
struct SearchSpace {
  Point2 apex{0.0, 0.0};
  SearchSpaceKind kind = SearchSpaceKind::Full;
  double alpha_start = 0.0;
  double width = kTwoPi;

  double alpha_end() const { return wrap_angle(alpha_start + width); }
  bool contains_direction(double theta, double tol_rad = 1e-9) const;
};

SearchSpace build_search_space(int agent, const ConvexLayerSet& layers,
                               const std::vector<Point2>& points);

enum class GoalArcKind { Arc, PointPair, FullCircle };

// Admissible goal set on the boundary circle: first intersections of the
// search-space rays with the circle. An Arc runs counterclockwise from
// phi_start over width; a PointPair holds exactly the two angles phi_start
// and wrap(phi_start + width).
struct GoalArc {
  Circle circle;
  GoalArcKind kind = GoalArcKind::FullCircle;
  double phi_start = 0.0;
  double width = kTwoPi;

  double phi_end() const { return wrap_angle(phi_start + width); }
  bool contains_angle(double phi, double tol_rad = 0.0) const;
};

// Requires the apex strictly inside the circle, so each boundary ray meets
// the circle at exactly one forward point.
GoalArc intersect_with_circle(const SearchSpace& ss, const Circle& circle);

// Polar angle (about the circle center) of the first hit of the ray from
// `origin` in direction `theta` with the circle. Origin must be strictly
// inside.
double ray_circle_hit_angle(const Point2& origin, double theta, const Circle& circle);

}  // namespace circleform
