#include "circleform/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace circleform {

namespace {

double direction_angle(const Point2& v) { return wrap_angle(std::atan2(v.y(), v.x())); }

// Outward normal of a counterclockwise polygon edge: the edge direction
// rotated clockwise by pi/2.
Point2 outward_normal(const Point2& edge_dir) { return {edge_dir.y(), -edge_dir.x()}; }

}  // namespace

bool SearchSpace::contains_direction(double theta, double tol_rad) const {
  switch (kind) {
    case SearchSpaceKind::Full:
      return true;
    case SearchSpaceKind::Line:
      return angle_distance(theta, alpha_start) <= tol_rad ||
             angle_distance(theta, alpha_start + kPi) <= tol_rad;
    case SearchSpaceKind::Cone:
    case SearchSpaceKind::HalfPlane: {
      const double d = ccw_delta(alpha_start, theta);
      return d <= width + tol_rad || d >= kTwoPi - tol_rad;
    }
  }
  return false;
}

bool GoalArc::contains_angle(double phi, double tol_rad) const {
  switch (kind) {
    case GoalArcKind::FullCircle:
      return true;
    case GoalArcKind::PointPair:
      return angle_distance(phi, phi_start) <= tol_rad ||
             angle_distance(phi, phi_start + width) <= tol_rad;
    case GoalArcKind::Arc: {
      const double d = ccw_delta(phi_start, phi);
      return d <= width + tol_rad || d >= kTwoPi - tol_rad;
    }
  }
  return false;
}

SearchSpace build_search_space(int agent, const ConvexLayerSet& layers,
                               const std::vector<Point2>& points) {
  if (agent < 0 || agent >= static_cast<int>(layers.layer_of.size()) ||
      layers.layer_of[agent] < 0) {
    throw ValidationError("build_search_space: agent " + std::to_string(agent) +
                          " is not part of the layer decomposition");
  }
  const int m = layers.layer_of[agent];
  const std::vector<int>& layer = layers.layers[m];
  const Point2 apex = points[agent];

  if (!layers.is_degenerate(m)) {
    // Vertex of a convex polygon: cone between the outward normals of the two
    // supporting edges, swept counterclockwise; its width is the exterior
    // angle pi - interior angle.
    const int k = static_cast<int>(layer.size());
    const int pos = static_cast<int>(std::find(layer.begin(), layer.end(), agent) - layer.begin());
    const Point2 prev = points[layer[(pos + k - 1) % k]];
    const Point2 next = points[layer[(pos + 1) % k]];
    const Point2 n_in = outward_normal((apex - prev).normalized());
    const Point2 n_out = outward_normal((next - apex).normalized());
    const double a1 = direction_angle(n_in);
    const double a2 = direction_angle(n_out);
    const double width = ccw_delta(a1, a2);
    if (width <= 0.0 || width >= kPi) {
      throw InternalError("build_search_space: degenerate cone width at agent " +
                          std::to_string(agent));
    }
    return {apex, SearchSpaceKind::Cone, a1, width};
  }

  if (layer.size() == 1) return {apex, SearchSpaceKind::Full, 0.0, kTwoPi};

  // Collinear terminal layer, stored sorted along the carrier line: the
  // endpoints open into the half-plane facing away from the other points,
  // intermediates get the perpendicular line.
  const Point2 line_dir = (points[layer.back()] - points[layer.front()]).normalized();
  if (agent == layer.front()) {
    const double away = direction_angle(-line_dir);
    return {apex, SearchSpaceKind::HalfPlane, wrap_angle(away - kPi / 2.0), kPi};
  }
  if (agent == layer.back()) {
    const double away = direction_angle(line_dir);
    return {apex, SearchSpaceKind::HalfPlane, wrap_angle(away - kPi / 2.0), kPi};
  }
  const double perp = direction_angle(Point2(-line_dir.y(), line_dir.x()));
  return {apex, SearchSpaceKind::Line, perp, kPi};
}

double ray_circle_hit_angle(const Point2& origin, double theta, const Circle& circle) {
  const Point2 q = origin - circle.center;
  const Point2 d{std::cos(theta), std::sin(theta)};
  const double b = q.dot(d);
  const double disc = b * b + circle.radius * circle.radius - q.squaredNorm();
  // disc > 0 whenever the origin is strictly inside.
  const double t = -b + std::sqrt(disc);
  const Point2 hit = q + t * d;
  return wrap_angle(std::atan2(hit.y(), hit.x()));
}

GoalArc intersect_with_circle(const SearchSpace& ss, const Circle& circle) {
  if (!circle.strictly_inside(ss.apex)) {
    throw ValidationError("intersect_with_circle: search-space apex is not strictly inside "
                          "the boundary circle");
  }
  switch (ss.kind) {
    case SearchSpaceKind::Full:
      return {circle, GoalArcKind::FullCircle, 0.0, kTwoPi};
    case SearchSpaceKind::Line: {
      const double pa = ray_circle_hit_angle(ss.apex, ss.alpha_start, circle);
      const double pb = ray_circle_hit_angle(ss.apex, ss.alpha_start + kPi, circle);
      return {circle, GoalArcKind::PointPair, pa, ccw_delta(pa, pb)};
    }
    case SearchSpaceKind::Cone:
    case SearchSpaceKind::HalfPlane: {
      // The hit angle sweeps counterclockwise monotonically with the ray
      // direction (boundary of a region star-shaped about the apex), so the
      // arc runs counterclockwise from the first boundary hit to the second.
      const double po = ray_circle_hit_angle(ss.apex, ss.alpha_start, circle);
      const double pf = ray_circle_hit_angle(ss.apex, ss.alpha_start + ss.width, circle);
      return {circle, GoalArcKind::Arc, po, ccw_delta(po, pf)};
    }
  }
  throw InternalError("intersect_with_circle: unknown search-space kind");
}

}  // namespace circleform
