#pragma once

#include <vector>

#include "circleform/types.hpp"

namespace circleform {

// Exact minimum enclosing circle (expected-linear randomized construction
// with a deterministic shuffle).
Circle minimum_enclosing_circle(const std::vector<Point2>& points);

// Minimum enclosing circle inflated by (1 + margin) so every point becomes
// strictly interior.
Circle enclosing_circle(const std::vector<Point2>& points, double margin = 0.05);

}  // namespace circleform
