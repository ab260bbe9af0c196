#pragma once

#include <vector>

#include "circleform/types.hpp"

namespace circleform {

// Nested hull decomposition of a point set. layers[0] is the outermost hull
// L_1. The final layer may be a degenerate leftover (one point, a pair, or
// three or more collinear points); in that case terminal_collinear is set and
// the layer indices are sorted along the carrier line so that its first and
// last entries are the endpoints. Non-degenerate layers list hull vertices in
// counterclockwise order starting at the lowest-y (then lowest-x) vertex.
struct ConvexLayerSet {
  std::vector<std::vector<int>> layers;
  std::vector<int> layer_of;  // agent index -> 0-based layer index
  bool terminal_collinear = false;

  int layer_count() const { return static_cast<int>(layers.size()); }
  bool is_degenerate(int m) const { return terminal_collinear && m + 1 == layer_count(); }
};

// True iff a, b, c lie on one line: |(a-b) x (b-c)| <= tol * max(1, scale).
bool collinear(const Point2& a, const Point2& b, const Point2& c);

// Turn orientation of the path a -> b -> c with the same tolerance family:
// +1 left (counterclockwise), -1 right, 0 straight.
int turn_direction(const Point2& a, const Point2& b, const Point2& c);

// Strict-vertex Graham scan. Returns extreme points only: collinear points
// interior to a hull edge are excluded, so they fall to inner layers of the
// decomposition. Output starts at the lowest-y (then lowest-x) vertex and
// proceeds counterclockwise. Throws ValidationError when two input points are
// closer than tol::duplicate. A fully collinear input yields its two extreme
// points.
std::vector<int> convex_hull(const std::vector<Point2>& points);

// Iteratively peels hulls until at most two points remain or the remainder is
// collinear; the leftover forms the terminal layer.
ConvexLayerSet convex_layers(const std::vector<Point2>& points);

// True iff q is strictly inside the counterclockwise convex polygon.
bool strictly_inside_polygon(const std::vector<Point2>& polygon, const Point2& q);

}  // namespace circleform
