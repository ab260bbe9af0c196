#include "circleform/enclosing_circle.hpp"

#include <algorithm>
#include <cmath>

#include "circleform/rng.hpp"

namespace circleform {

namespace {

struct Disk {
  Point2 center{0.0, 0.0};
  double radius = 0.0;
};

bool in_disk(const Disk& d, const Point2& p) {
  // Small slack keeps the support-point recursion stable.
  return (p - d.center).norm() <= d.radius * (1.0 + 1e-12) + 1e-14;
}

Disk disk_from_two(const Point2& a, const Point2& b) {
  const Point2 c = 0.5 * (a + b);
  return {c, 0.5 * (a - b).norm()};
}

Disk disk_from_three(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 ab = b - a, ac = c - a;
  const double d = 2.0 * (ab.x() * ac.y() - ab.y() * ac.x());
  if (d == 0.0) {
    // Collinear: the diametral disk of the farthest pair covers all three.
    Disk best = disk_from_two(a, b);
    const Disk t1 = disk_from_two(a, c), t2 = disk_from_two(b, c);
    if (t1.radius > best.radius) best = t1;
    if (t2.radius > best.radius) best = t2;
    return best;
  }
  const double ab2 = ab.squaredNorm(), ac2 = ac.squaredNorm();
  const Point2 center = a + Point2(ac.y() * ab2 - ab.y() * ac2, ab.x() * ac2 - ac.x() * ab2) / d;
  return {center, (center - a).norm()};
}

Disk trivial_disk(const std::vector<Point2>& support) {
  switch (support.size()) {
    case 0:
      return {{0.0, 0.0}, 0.0};
    case 1:
      return {support[0], 0.0};
    case 2:
      return disk_from_two(support[0], support[1]);
    default:
      return disk_from_three(support[0], support[1], support[2]);
  }
}

Disk welzl(std::vector<Point2>& pts, std::size_t count, std::vector<Point2>& support) {
  if (count == 0 || support.size() == 3) return trivial_disk(support);
  const Point2 p = pts[count - 1];
  Disk d = welzl(pts, count - 1, support);
  if (in_disk(d, p)) return d;
  support.push_back(p);
  d = welzl(pts, count - 1, support);
  support.pop_back();
  return d;
}

}  // namespace

Circle minimum_enclosing_circle(const std::vector<Point2>& points) {
  if (points.empty()) throw ValidationError("minimum_enclosing_circle: empty input");
  std::vector<Point2> pts = points;
  // Deterministic shuffle: identical inputs give identical recursion order.
  RngStream rng = make_stream(0xC19C1Eull, pts.size(), StreamPurpose::Shuffle);
  for (std::size_t i = pts.size(); i > 1; --i) {
    std::swap(pts[i - 1], pts[rng.next_u64() % i]);
  }
  std::vector<Point2> support;
  support.reserve(3);
  const Disk d = welzl(pts, pts.size(), support);
  return {d.center, d.radius};
}

Circle enclosing_circle(const std::vector<Point2>& points, double margin) {
  if (margin < 0.0) throw ValidationError("enclosing_circle: margin must be non-negative");
  Circle c = minimum_enclosing_circle(points);
  if (c.radius <= 0.0) {
    // Single point (or all coincident): any positive radius encloses it.
    c.radius = 1.0;
  }
  c.radius *= (1.0 + margin);
  return c;
}

}  // namespace circleform
