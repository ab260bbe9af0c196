#include "circleform/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace circleform {

namespace {

double cross2(const Point2& u, const Point2& v) { return u.x() * v.y() - u.y() * v.x(); }

// Two agents closer than tol::duplicate violate the distinct-position
// assumption. Sort by x so only a sliding window needs pairwise checks.
void check_distinct(const std::vector<Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a].x() != pts[b].x()) return pts[a].x() < pts[b].x();
    return pts[a].y() < pts[b].y();
  });
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int a = order[i], b = order[j];
      if (pts[b].x() - pts[a].x() > tol::duplicate) break;
      if ((pts[b] - pts[a]).norm() < tol::duplicate) {
        throw ValidationError("duplicate points: agents " + std::to_string(a) + " and " +
                              std::to_string(b) + " are closer than the distinctness tolerance");
      }
    }
  }
}

std::vector<int> hull_indices(const std::vector<Point2>& pts, std::vector<int> idx) {
  const int k = static_cast<int>(idx.size());
  if (k <= 2) return idx;

  // Anchor: lowest y, then lowest x.
  auto anchor_it = std::min_element(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].y() != pts[b].y()) return pts[a].y() < pts[b].y();
    return pts[a].x() < pts[b].x();
  });
  std::iter_swap(idx.begin(), anchor_it);
  const Point2 anchor = pts[idx[0]];

  // Polar-angle sort about the anchor; ties (same ray) nearest first. All
  // points lie in the anchor's upper half-plane so the cross comparison is a
  // valid strict weak order.
  std::sort(idx.begin() + 1, idx.end(), [&](int a, int b) {
    const double c = cross2(pts[a] - anchor, pts[b] - anchor);
    if (c != 0.0) return c > 0.0;
    return (pts[a] - anchor).squaredNorm() < (pts[b] - anchor).squaredNorm();
  });

  // Strict turns only: straight configurations pop, which drops edge-interior
  // collinear points from the vertex list.
  std::vector<int> st;
  st.reserve(k);
  for (const int id : idx) {
    while (st.size() >= 2 &&
           turn_direction(pts[st[st.size() - 2]], pts[st.back()], pts[id]) <= 0) {
      st.pop_back();
    }
    st.push_back(id);
  }

  // The scan never re-examines the junctions that involve the anchor, so an
  // anchor sitting tolerance-collinear on a hull edge (exact y-ties broken by
  // rounding noise) would survive. Sweep the cycle until every kept vertex is
  // a strict left turn.
  bool changed = true;
  while (changed && st.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < st.size() && st.size() >= 3;) {
      const std::size_t prev = (i + st.size() - 1) % st.size();
      const std::size_t next = (i + 1) % st.size();
      if (turn_direction(pts[st[prev]], pts[st[i]], pts[st[next]]) <= 0) {
        st.erase(st.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        if (i > 0) --i;
      } else {
        ++i;
      }
    }
  }

  // Deterministic start: lowest y, then lowest x, counterclockwise.
  const auto start = std::min_element(st.begin(), st.end(), [&](int a, int b) {
    if (pts[a].y() != pts[b].y()) return pts[a].y() < pts[b].y();
    return pts[a].x() < pts[b].x();
  });
  std::rotate(st.begin(), start, st.end());
  return st;
}

bool all_collinear(const std::vector<Point2>& pts, const std::vector<int>& idx) {
  if (idx.size() <= 2) return true;
  // Carrier line through the first point and the point farthest from it.
  const Point2 a = pts[idx[0]];
  int far = idx[1];
  double best = 0.0;
  for (const int i : idx) {
    const double d = (pts[i] - a).squaredNorm();
    if (d > best) {
      best = d;
      far = i;
    }
  }
  for (const int i : idx) {
    if (!collinear(a, pts[far], pts[i])) return false;
  }
  return true;
}

void sort_along_carrier(const std::vector<Point2>& pts, std::vector<int>& idx) {
  if (idx.size() < 2) return;
  const Point2 a = pts[idx[0]];
  int far = idx[1];
  double best = 0.0;
  for (const int i : idx) {
    const double d = (pts[i] - a).squaredNorm();
    if (d > best) {
      best = d;
      far = i;
    }
  }
  const Point2 dir = (pts[far] - a).normalized();
  std::sort(idx.begin(), idx.end(), [&](int u, int v) {
    const double pu = pts[u].dot(dir), pv = pts[v].dot(dir);
    if (pu != pv) return pu < pv;
    return u < v;
  });
}

}  // namespace

bool collinear(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 u = a - b, v = b - c;
  const double scale = std::max(1.0, u.norm() * v.norm());
  return std::abs(cross2(u, v)) <= tol::collinear * scale;
}

int turn_direction(const Point2& a, const Point2& b, const Point2& c) {
  const Point2 u = b - a, v = c - b;
  const double s = cross2(u, v);
  const double scale = std::max(1.0, u.norm() * v.norm());
  if (std::abs(s) <= tol::collinear * scale) return 0;
  return s > 0.0 ? 1 : -1;
}

std::vector<int> convex_hull(const std::vector<Point2>& points) {
  if (points.empty()) throw ValidationError("convex_hull: empty input");
  check_distinct(points);
  std::vector<int> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  return hull_indices(points, std::move(idx));
}

ConvexLayerSet convex_layers(const std::vector<Point2>& points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw ValidationError("convex_layers: empty input");
  check_distinct(points);

  ConvexLayerSet out;
  out.layer_of.assign(n, -1);

  std::vector<int> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  std::vector<char> peeled(n, 0);

  while (!alive.empty()) {
    if (alive.size() <= 2 || all_collinear(points, alive)) {
      sort_along_carrier(points, alive);
      out.terminal_collinear = true;
      for (const int i : alive) out.layer_of[i] = out.layer_count();
      out.layers.push_back(std::move(alive));
      break;
    }
    std::vector<int> hull = hull_indices(points, alive);
    for (const int i : hull) {
      out.layer_of[i] = out.layer_count();
      peeled[i] = 1;
    }
    std::vector<int> rest;
    rest.reserve(alive.size() - hull.size());
    for (const int i : alive) {
      if (!peeled[i]) rest.push_back(i);
    }
    out.layers.push_back(std::move(hull));
    alive = std::move(rest);
  }
  return out;
}

bool strictly_inside_polygon(const std::vector<Point2>& polygon, const Point2& q) {
  const int k = static_cast<int>(polygon.size());
  if (k < 3) return false;
  for (int i = 0; i < k; ++i) {
    if (turn_direction(polygon[i], polygon[(i + 1) % k], q) <= 0) return false;
  }
  return true;
}

}  // namespace circleform
