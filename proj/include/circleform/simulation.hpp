#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "circleform/assignment.hpp"
#include "circleform/quadrotor.hpp"
#include "circleform/rng.hpp"
#include "circleform/types.hpp"

namespace circleform {

struct Scenario {
  std::vector<Point2> initial_positions;
  Circle circle;                 // radius <= 0 means "compute from the points"
  double speed = 0.5;            // m/s
  double agent_radius = 0.0;     // m, 0 = point agent
  double safety_distance = 0.0;  // d_s; a pair conflicts when center distance <= d_s
  double delta = 0.2;            // conflict-shift fraction, (0, 1)
  double delta_u = 0.0;          // position-uncertainty half-width, m
  double delta_td = 0.0;         // max communication delay, s
  std::uint64_t seed = 0;
  double dt = 0.01;              // sampling step, s
  bool dynamics = false;         // track goals with the quadrotor backend
  QuadrotorConfig quad;
};

struct Conflict {
  int i = 0;
  int j = 0;
  double time = 0.0;      // first instant the pair distance drops to d_s
  double distance = 0.0;  // minimum distance attained by the pair
};

struct TrajectoryLog {
  std::vector<double> times;
  std::vector<std::vector<Point2>> positions;  // [step][agent], only when traced
  std::vector<double> E_trace;                 // min pairwise distance per step
  double min_E = std::numeric_limits<double>::infinity();
  std::vector<Conflict> conflicts;             // one entry per offending pair
  bool unstable = false;                       // a dynamics run left the sane envelope
  bool small_angle_exceeded = false;           // some |roll| or |pitch| passed 0.5 rad

  int conflict_count() const { return static_cast<int>(conflicts.size()); }
};

struct SimOptions {
  bool record_trace = false;  // keep sampled times/positions/E(t)
};

// Closed-form kinematic position: at rest until the delay elapses, constant
// speed along the assigned heading until arrival, then parked on the goal.
Point2 position_at(const Point2& start, const AgentGoal& goal, double speed, double t,
                   double delay);

// Kinematic runs detect conflicts with an exact piecewise closest-approach
// check between every agent pair, so verdicts do not depend on dt; sampled
// E(t) is kept only when tracing. Dynamics runs integrate the quadrotor loop
// and check pairs at every dt step, refining near approaches on the inner
// substep grid.
//
// A pair conflicts when its distance drops to the safety distance while the
// pair is still maneuvering (before the earlier of the two arrivals). The
// spacing of two parked goals is a property of the assignment, not the
// motion, and is audited separately via the goal-uniqueness invariant.
// min_E always tracks the whole run.
TrajectoryLog simulate(const Scenario& scenario, const GoalAssignment& assignment,
                       const std::vector<double>& delays, const SimOptions& options = {});

// n independent draws from U(0, delta_td); all zeros when delta_td == 0.
std::vector<double> sample_delays(int n, double delta_td, RngStream& rng);

// Each coordinate independently shifted by U(-delta_u, delta_u). The output
// feeds goal assignment while the true positions feed simulation.
std::vector<Point2> perturb_positions(const std::vector<Point2>& positions, double delta_u,
                                      RngStream& rng);

}  // namespace circleform
