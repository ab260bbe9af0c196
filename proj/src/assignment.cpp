#include "circleform/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace circleform {

namespace {

// Chord distance from a point at polar (r, phi_p) to the circle point at
// polar angle phi, both about the circle center.
double chord_distance(double radius, const PolarPoint& agent, double phi) {
  const double c = std::cos(phi - agent.phi);
  return std::sqrt(std::max(0.0, radius * radius + agent.r * agent.r - 2.0 * radius * agent.r * c));
}

// Convex-combination shift toward the wider side; ties go clockwise (toward
// `left`). All three angles are unwrapped with left <= mid <= right.
double shift_into_larger_gap(double left, double mid, double right, double delta) {
  if (std::abs(mid - left) >= std::abs(right - mid)) return (1.0 - delta) * mid + delta * left;
  return (1.0 - delta) * mid + delta * right;
}

}  // namespace

bool AssignedSet::conflicts(double phi, double tol_rad) const {
  if (angles_.empty()) return false;
  const double w = wrap_angle(phi);
  auto it = std::lower_bound(angles_.begin(), angles_.end(), w);
  const double above = (it == angles_.end()) ? angles_.front() : *it;
  const double below = (it == angles_.begin()) ? angles_.back() : *(it - 1);
  return angle_distance(w, above) <= tol_rad || angle_distance(w, below) <= tol_rad;
}

void AssignedSet::insert(double phi) {
  const double w = wrap_angle(phi);
  angles_.insert(std::upper_bound(angles_.begin(), angles_.end(), w), w);
}

std::vector<double> AssignedSet::local_angles_in(const GoalArc& arc, double tol_rad) const {
  std::vector<double> local;
  for (const double a : angles_) {
    double d = ccw_delta(arc.phi_start, a);
    if (d >= kTwoPi - tol_rad) d = 0.0;  // just below the arc start wraps to it
    if (d <= arc.width + tol_rad) local.push_back(std::min(d, arc.width));
  }
  std::sort(local.begin(), local.end());
  return local;
}

std::pair<double, double> AssignedSet::circular_neighbors(double phi, double exclude_tol) const {
  const double w = wrap_angle(phi);
  double best_below = -kTwoPi, best_above = kTwoPi;
  bool found_below = false, found_above = false;
  for (const double a : angles_) {
    if (angle_distance(a, w) <= exclude_tol) continue;
    const double up = ccw_delta(w, a);      // (0, 2*pi)
    const double down = ccw_delta(a, w);
    if (up < best_above) {
      best_above = up;
      found_above = true;
    }
    if (-down > best_below) {
      best_below = -down;
      found_below = true;
    }
  }
  const double left = found_below ? w + best_below : w - kTwoPi;
  const double right = found_above ? w + best_above : w + kTwoPi;
  return {left, right};
}

double nearest_goal_on_arc(const PolarPoint& agent, const GoalArc& arc) {
  if (arc.kind == GoalArcKind::PointPair) {
    throw InternalError("nearest_goal_on_arc: point-pair goal sets use the pair rule");
  }
  if (arc.kind == GoalArcKind::FullCircle) return agent.phi;
  if (ccw_delta(arc.phi_start, agent.phi) <= arc.width) return agent.phi;
  const double d_start = angle_distance(arc.phi_start, agent.phi);
  const double d_end = angle_distance(arc.phi_end(), agent.phi);
  return d_start <= d_end ? wrap_angle(arc.phi_start) : arc.phi_end();
}

double nearest_goal_on_pointpair(const PolarPoint& agent, const GoalArc& pair) {
  if (pair.kind != GoalArcKind::PointPair) {
    throw InternalError("nearest_goal_on_pointpair: arc is not a point pair");
  }
  const double pa = wrap_angle(pair.phi_start);
  const double pb = wrap_angle(pair.phi_start + pair.width);
  const double da = chord_distance(pair.circle.radius, agent, pa);
  const double db = chord_distance(pair.circle.radius, agent, pb);
  if (std::abs(da - db) <= 1e-9 * std::max(1.0, pair.circle.radius)) return std::min(pa, pb);
  return da < db ? pa : pb;
}

double resolve_pointpair_conflict(double chosen_phi, double other_phi,
                                  const AssignedSet& assigned, double delta) {
  if (!assigned.conflicts(other_phi)) return wrap_angle(other_phi);
  const auto [left, right] = assigned.circular_neighbors(chosen_phi, tol::angle_eq);
  return wrap_angle(shift_into_larger_gap(left, wrap_angle(chosen_phi), right, delta));
}

double resolve_conflict(double goal_phi, const GoalArc& arc, const AssignedSet& assigned,
                        double delta) {
  if (arc.kind == GoalArcKind::FullCircle) {
    const auto [left, right] = assigned.circular_neighbors(goal_phi, tol::angle_eq);
    return wrap_angle(shift_into_larger_gap(left, wrap_angle(goal_phi), right, delta));
  }
  if (arc.kind != GoalArcKind::Arc) {
    throw InternalError("resolve_conflict: expected an arc goal set");
  }

  // Work in unwrapped coordinates local to the arc so the 0/2*pi seam cannot
  // disturb the convex combination.
  const std::vector<double> committed = assigned.local_angles_in(arc, tol::angle_eq);
  if (committed.empty()) {
    throw InternalError("resolve_conflict: conflict flagged but no assigned goal lies on the arc");
  }
  const double g = std::clamp(ccw_delta(arc.phi_start, goal_phi), 0.0, arc.width);
  std::size_t q = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < committed.size(); ++i) {
    const double d = std::abs(committed[i] - g);
    if (d < best) {
      best = d;
      q = i;
    }
  }
  if (best > tol::angle_eq) {
    throw InternalError("resolve_conflict: conflict flagged but no assigned goal coincides "
                        "with the requested one");
  }
  const double left = (q == 0) ? 0.0 : committed[q - 1];
  const double right = (q + 1 == committed.size()) ? arc.width : committed[q + 1];
  const double local = shift_into_larger_gap(left, committed[q], right, delta);
  return wrap_angle(arc.phi_start + local);
}

GoalAssignment assign_all(const std::vector<Point2>& positions, const Circle& circle,
                          const ConvexLayerSet& layers, double speed, double delta) {
  const int n = static_cast<int>(positions.size());
  if (speed <= 0.0) throw ValidationError("assign_all: speed must be positive");
  if (delta <= 0.0 || delta >= 1.0) throw ValidationError("assign_all: delta must be in (0, 1)");
  for (int i = 0; i < n; ++i) {
    if (!circle.strictly_inside(positions[i])) {
      throw ValidationError("assign_all: agent " + std::to_string(i) +
                            " is not strictly inside the boundary circle");
    }
  }

  GoalAssignment out;
  out.circle = circle;
  out.agents.resize(n);
  AssignedSet assigned;

  for (int m = layers.layer_count() - 1; m >= 0; --m) {
    std::vector<int> order = layers.layers[m];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const PolarPoint pa = to_polar(positions[a], circle.center);
      const PolarPoint pb = to_polar(positions[b], circle.center);
      if (pa.phi != pb.phi) return pa.phi < pb.phi;
      if (pa.r != pb.r) return pa.r < pb.r;
      return a < b;
    });

    for (const int i : order) {
      const SearchSpace ss = build_search_space(i, layers, positions);
      const GoalArc arc = intersect_with_circle(ss, circle);
      const PolarPoint polar = to_polar(positions[i], circle.center);

      double phi;
      bool modified = false;
      if (arc.kind == GoalArcKind::PointPair) {
        phi = nearest_goal_on_pointpair(polar, arc);
        if (assigned.conflicts(phi)) {
          modified = true;
          const double pa = wrap_angle(arc.phi_start);
          const double pb = wrap_angle(arc.phi_start + arc.width);
          const double other = (angle_distance(phi, pa) < angle_distance(phi, pb)) ? pb : pa;
          phi = resolve_pointpair_conflict(phi, other, assigned, delta);
        }
      } else {
        phi = nearest_goal_on_arc(polar, arc);
        if (assigned.conflicts(phi)) {
          phi = resolve_conflict(phi, arc, assigned, delta);
          modified = true;
        }
      }

      assigned.insert(phi);
      AgentGoal& g = out.agents[i];
      g.goal = circle.point_at(phi);
      g.goal_phi = wrap_angle(phi);
      const Point2 leg = g.goal - positions[i];
      g.psi = wrap_angle(std::atan2(leg.y(), leg.x()));
      g.t_f = leg.norm() / speed;
      g.layer = m + 1;
      g.was_modified = modified;
    }
  }
  return out;
}

AssignmentAudit audit_assignment(const GoalAssignment& assignment, const ConvexLayerSet& layers,
                                 const std::vector<Point2>& positions) {
  AssignmentAudit audit;
  const int n = static_cast<int>(assignment.agents.size());

  std::vector<double> phis(n);
  for (int i = 0; i < n; ++i) phis[i] = assignment.agents[i].goal_phi;
  std::sort(phis.begin(), phis.end());
  double min_gap = kTwoPi;
  for (int i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? phis[i + 1] : phis[0];
    if (n > 1) min_gap = std::min(min_gap, angle_distance(phis[i], next));
  }
  audit.min_goal_gap = (n > 1) ? min_gap : kTwoPi;

  constexpr double kContainTol = 1e-9;
  for (int i = 0; i < n; ++i) {
    const SearchSpace ss = build_search_space(i, layers, positions);
    const GoalArc arc = intersect_with_circle(ss, assignment.circle);
    if (!arc.contains_angle(assignment.agents[i].goal_phi, kContainTol)) {
      audit.all_in_search_space = false;
    }
  }
  return audit;
}

}  // namespace circleform
