// Brute-force reference implementations used only by tests. They stay
// independent of the production code paths they check: extreme points via the
// convex-combination definition, enclosing circles via exhaustive pair/triple
// candidates.
#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "circleform/rng.hpp"
#include "circleform/types.hpp"

namespace oracle {

using circleform::Point2;

inline double cross3(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

inline bool on_segment(const Point2& a, const Point2& b, const Point2& p, double eps) {
  const double area = cross3(a, b, p);
  const double scale = std::max(1.0, (b - a).norm() * (p - a).norm());
  if (std::abs(area) > eps * scale) return false;
  const double t = (p - a).dot(b - a);
  return t >= -eps && t <= (b - a).squaredNorm() + eps;
}

// Inclusive point-in-triangle test; degenerate triangles fall back to the
// segment test.
inline bool in_triangle(const Point2& a, const Point2& b, const Point2& c, const Point2& p,
                        double eps) {
  const double orient = cross3(a, b, c);
  const double scale = std::max({1.0, (b - a).norm() * (c - a).norm()});
  if (std::abs(orient) <= eps * scale) {
    return on_segment(a, b, p, eps) || on_segment(a, c, p, eps) || on_segment(b, c, p, eps);
  }
  const double s = orient > 0 ? 1.0 : -1.0;
  return s * cross3(a, b, p) >= -eps * scale && s * cross3(b, c, p) >= -eps * scale &&
         s * cross3(c, a, p) >= -eps * scale;
}

// A point is extreme iff it lies in the convex hull of the others in no way:
// neither on a segment between two of them nor inside a triangle of them.
inline std::set<int> extreme_points(const std::vector<Point2>& pts,
                                    const std::vector<int>& subset, double eps = 1e-9) {
  std::set<int> out;
  const int k = static_cast<int>(subset.size());
  for (int ii = 0; ii < k; ++ii) {
    const Point2& p = pts[subset[ii]];
    bool covered = false;
    for (int aa = 0; aa < k && !covered; ++aa) {
      if (aa == ii) continue;
      for (int bb = aa + 1; bb < k && !covered; ++bb) {
        if (bb == ii) continue;
        if (on_segment(pts[subset[aa]], pts[subset[bb]], p, eps)) covered = true;
        for (int cc = bb + 1; cc < k && !covered; ++cc) {
          if (cc == ii) continue;
          if (in_triangle(pts[subset[aa]], pts[subset[bb]], pts[subset[cc]], p, eps)) {
            covered = true;
          }
        }
      }
    }
    if (!covered) out.insert(subset[ii]);
  }
  return out;
}

inline std::set<int> extreme_points(const std::vector<Point2>& pts, double eps = 1e-9) {
  std::vector<int> all(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
  return extreme_points(pts, all, eps);
}

inline bool all_collinear(const std::vector<Point2>& pts, const std::vector<int>& subset,
                          double eps = 1e-9) {
  if (subset.size() <= 2) return true;
  for (std::size_t a = 0; a + 2 < subset.size() + 0; ++a) {
    const double area = cross3(pts[subset[0]], pts[subset[1]], pts[subset[a + 2]]);
    const double scale = std::max(1.0, (pts[subset[1]] - pts[subset[0]]).norm() *
                                           (pts[subset[a + 2]] - pts[subset[0]]).norm());
    if (std::abs(area) > eps * scale) return false;
  }
  return true;
}

// Repeated extreme-point peeling; same stopping rule as the production
// decomposition but built on the brute-force oracle above.
inline std::vector<std::set<int>> peel_layers(const std::vector<Point2>& pts) {
  std::vector<std::set<int>> layers;
  std::vector<int> alive(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) alive[i] = static_cast<int>(i);
  while (!alive.empty()) {
    if (alive.size() <= 2 || all_collinear(pts, alive)) {
      layers.emplace_back(alive.begin(), alive.end());
      break;
    }
    const std::set<int> ext = extreme_points(pts, alive);
    layers.push_back(ext);
    std::vector<int> rest;
    for (const int i : alive) {
      if (!ext.count(i)) rest.push_back(i);
    }
    alive = std::move(rest);
  }
  return layers;
}

// Smallest circle over all diametral pairs and circumscribed triples that
// contains every point.
inline circleform::Circle brute_force_mec(const std::vector<Point2>& pts) {
  using circleform::Circle;
  const double slack = 1e-9;
  auto contains_all = [&](const Circle& c) {
    for (const Point2& p : pts) {
      if ((p - c.center).norm() > c.radius + slack) return false;
    }
    return true;
  };

  Circle best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
  const int n = static_cast<int>(pts.size());
  if (n == 1) return {pts[0], 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Circle c{0.5 * (pts[i] + pts[j]), 0.5 * (pts[i] - pts[j]).norm()};
      if (c.radius < best.radius && contains_all(c)) best = c;
      for (int k = j + 1; k < n; ++k) {
        const Point2 ab = pts[j] - pts[i], ac = pts[k] - pts[i];
        const double d = 2.0 * (ab.x() * ac.y() - ab.y() * ac.x());
        if (d == 0.0) continue;
        const Point2 center =
            pts[i] + Point2(ac.y() * ab.squaredNorm() - ab.y() * ac.squaredNorm(),
                            ab.x() * ac.squaredNorm() - ac.x() * ab.squaredNorm()) /
                         d;
        const Circle cc{center, (center - pts[i]).norm()};
        if (cc.radius < best.radius && contains_all(cc)) best = cc;
      }
    }
  }
  return best;
}

inline std::vector<Point2> random_points_in_disc(int n, double radius, std::uint64_t seed,
                                                 double min_separation = 0.0) {
  circleform::RngStream rng(seed);
  std::vector<Point2> pts;
  while (static_cast<int>(pts.size()) < n) {
    const double r = radius * std::sqrt(rng.uniform());
    const double a = rng.uniform(0.0, circleform::kTwoPi);
    const Point2 p{r * std::cos(a), r * std::sin(a)};
    bool ok = true;
    for (const Point2& q : pts) {
      if ((p - q).norm() < std::max(min_separation, 1e-6)) ok = false;
    }
    if (ok) pts.push_back(p);
  }
  return pts;
}

}  // namespace oracle
