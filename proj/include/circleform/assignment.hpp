#pragma once

#include <utility>
#include <vector>

#include "circleform/geometry.hpp"
#include "circleform/search_space.hpp"
#include "circleform/types.hpp"

namespace circleform {

struct AgentGoal {
  Point2 goal{0.0, 0.0};
  double goal_phi = 0.0;  // polar angle of the goal about the circle center
  double psi = 0.0;       // heading from start to goal, [0, 2*pi)
  double t_f = 0.0;       // arrival time at the prescribed speed, seconds
  int layer = 0;          // 1-based layer index, 1 = outermost
  bool was_modified = false;  // conflict resolution recomputed this goal
};

struct GoalAssignment {
  std::vector<AgentGoal> agents;
  Circle circle;
};

// Sorted set of committed goal angles (the running set of the assignment
// sweep).
class AssignedSet {
 public:
  // True iff some committed angle is within tol_rad of phi (wrapped).
  bool conflicts(double phi, double tol_rad = tol::angle_eq) const;
  void insert(double phi);
  std::size_t size() const { return angles_.size(); }

  // Committed angles on the arc, as local CCW offsets from the arc start,
  // clamped to [0, width] and sorted ascending. Membership is tolerant by
  // tol_rad on both ends.
  std::vector<double> local_angles_in(const GoalArc& arc, double tol_rad) const;

  // Nearest committed angles on either side of phi, excluding entries within
  // exclude_tol of phi itself, unwrapped so that left <= phi <= right. With
  // no other entries the neighbors are phi -+ 2*pi.
  std::pair<double, double> circular_neighbors(double phi, double exclude_tol) const;

 private:
  std::vector<double> angles_;  // sorted ascending, in [0, 2*pi)
};

// Shortest-distance goal on an arc: the agent's own polar angle when it lies
// on the arc (the radial exit), otherwise the endpoint with the smaller
// wrapped angular distance; ties take the arc start.
double nearest_goal_on_arc(const PolarPoint& agent, const GoalArc& arc);

// Degenerate line case: the closer of the two candidate points; near-exact
// ties take the smaller polar angle.
double nearest_goal_on_pointpair(const PolarPoint& agent, const GoalArc& pair);

// Shifts a conflicted goal a fraction delta into the larger adjacent gap of
// the committed angles on its arc (ties shift clockwise). The result is
// strictly between its neighbors, hence unassigned and still on the arc.
double resolve_conflict(double goal_phi, const GoalArc& arc, const AssignedSet& assigned,
                        double delta);

// Degenerate conflict on a point pair: prefer the free candidate; when both
// are taken, shift off the chosen one into the larger gap between its
// committed circular neighbors.
double resolve_pointpair_conflict(double chosen_phi, double other_phi,
                                  const AssignedSet& assigned, double delta);

// Full sweep: layers processed innermost first, agents within a layer in
// increasing polar angle about the circle center (ties by radius, then
// index). Emits goal, heading and arrival time per agent.
GoalAssignment assign_all(const std::vector<Point2>& positions, const Circle& circle,
                          const ConvexLayerSet& layers, double speed, double delta);

struct AssignmentAudit {
  double min_goal_gap = 0.0;       // min pairwise wrapped goal separation, rad
  bool all_in_search_space = true; // every goal inside its own admissible set
};

AssignmentAudit audit_assignment(const GoalAssignment& assignment,
                                 const ConvexLayerSet& layers,
                                 const std::vector<Point2>& positions);

}  // namespace circleform
