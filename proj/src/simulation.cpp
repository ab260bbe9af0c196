#include "circleform/simulation.hpp"

#include <algorithm>
#include <cmath>

namespace circleform {

namespace {

struct PairApproach {
  double min_distance = std::numeric_limits<double>::infinity();
  double min_time = 0.0;
  bool violated = false;
  double first_violation = 0.0;
  double violation_distance = std::numeric_limits<double>::infinity();
};

Point2 velocity_at(const AgentGoal& goal, double speed, double t, double delay) {
  if (t < delay || t >= delay + goal.t_f) return {0.0, 0.0};
  return speed * Point2{std::cos(goal.psi), std::sin(goal.psi)};
}

// Exact minimum distance of two piecewise-linear motions over [0, horizon],
// split at the four motion breakpoints. Conflicts are assessed only while
// the pair is still maneuvering, i.e. up to the earlier of the two arrivals:
// the final spacing of committed goals is a property of the assignment, not
// of the motion, and counting it would flag nearly every trial whose two
// goal angles happen to fall within d_s of each other on the circle.
PairApproach closest_approach(const Point2& si, const AgentGoal& gi, double delay_i,
                              const Point2& sj, const AgentGoal& gj, double delay_j,
                              double speed, double horizon, double d_s) {
  double events[6] = {0.0,
                      delay_i,
                      delay_i + gi.t_f,
                      delay_j,
                      delay_j + gj.t_f,
                      horizon};
  std::sort(events, events + 6);
  const double conflict_end = std::min(delay_i + gi.t_f, delay_j + gj.t_f);

  PairApproach out;
  for (int e = 0; e + 1 < 6; ++e) {
    const double a = std::clamp(events[e], 0.0, horizon);
    const double b = std::clamp(events[e + 1], 0.0, horizon);
    if (b - a <= 0.0) continue;
    const Point2 p0 = position_at(si, gi, speed, a, delay_i) -
                      position_at(sj, gj, speed, a, delay_j);
    const Point2 dv = velocity_at(gi, speed, a, delay_i) - velocity_at(gj, speed, a, delay_j);
    const double dv2 = dv.squaredNorm();
    double t_best = 0.0;
    if (dv2 > 0.0) t_best = std::clamp(-p0.dot(dv) / dv2, 0.0, b - a);
    const double d_best = (p0 + t_best * dv).norm();
    if (d_best < out.min_distance) {
      out.min_distance = d_best;
      out.min_time = a + t_best;
    }
    if (!out.violated && a < conflict_end) {
      // Restrict the conflict check to the maneuvering part of the interval.
      const double len = std::min(b, conflict_end) - a;
      double t_conf = 0.0;
      if (dv2 > 0.0) t_conf = std::clamp(-p0.dot(dv) / dv2, 0.0, len);
      const double d_conf = (p0 + t_conf * dv).norm();
      if (d_conf <= d_s) {
        out.violated = true;
        out.violation_distance = d_conf;
        // Earliest crossing within the interval: |p0 + t dv| = d_s.
        if (p0.norm() <= d_s) {
          out.first_violation = a;
        } else {
          const double qa = dv2;
          const double qb = 2.0 * p0.dot(dv);
          const double qc = p0.squaredNorm() - d_s * d_s;
          const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
          const double root = (-qb - std::sqrt(disc)) / (2.0 * qa);
          out.first_violation = a + std::clamp(root, 0.0, len);
        }
      }
    }
  }
  return out;
}

TrajectoryLog simulate_kinematic(const Scenario& sc, const GoalAssignment& assignment,
                                 const std::vector<double>& delays, const SimOptions& options) {
  const int n = static_cast<int>(sc.initial_positions.size());
  TrajectoryLog log;

  double horizon = 0.0;
  for (int i = 0; i < n; ++i) horizon = std::max(horizon, delays[i] + assignment.agents[i].t_f);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PairApproach pa = closest_approach(
          sc.initial_positions[i], assignment.agents[i], delays[i], sc.initial_positions[j],
          assignment.agents[j], delays[j], sc.speed, horizon, sc.safety_distance);
      log.min_E = std::min(log.min_E, pa.min_distance);
      if (pa.violated) log.conflicts.push_back({i, j, pa.first_violation, pa.violation_distance});
    }
  }

  if (options.record_trace) {
    const int steps = static_cast<int>(std::ceil(horizon / sc.dt)) + 1;
    log.times.reserve(steps);
    log.positions.reserve(steps);
    log.E_trace.reserve(steps);
    std::vector<Point2> frame(n);
    for (int k = 0; k < steps; ++k) {
      const double t = std::min(k * sc.dt, horizon);
      for (int i = 0; i < n; ++i) {
        frame[i] = position_at(sc.initial_positions[i], assignment.agents[i], sc.speed, t,
                               delays[i]);
      }
      double e = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) e = std::min(e, (frame[i] - frame[j]).norm());
      }
      log.times.push_back(t);
      log.positions.push_back(frame);
      log.E_trace.push_back(e);
    }
  }
  return log;
}

TrajectoryLog simulate_dynamics(const Scenario& sc, const GoalAssignment& assignment,
                                const std::vector<double>& delays, const SimOptions& options,
                                const std::vector<QuadrotorParams>* per_agent_params) {
  const int n = static_cast<int>(sc.initial_positions.size());
  const QuadrotorConfig& cfg = sc.quad;
  TrajectoryLog log;

  std::vector<double> arrival(n);
  std::vector<Point2> heading(n);
  double horizon = 0.0;
  for (int i = 0; i < n; ++i) {
    arrival[i] = delays[i] + assignment.agents[i].t_f;
    heading[i] = {std::cos(assignment.agents[i].psi), std::sin(assignment.agents[i].psi)};
    horizon = std::max(horizon, arrival[i]);
  }
  horizon += cfg.settle_time;

  // Substeps per sampling block; the inner step divides dt exactly.
  const int sub = std::max(1, static_cast<int>(std::round(sc.dt / cfg.dt_dyn)));
  const double h = sc.dt / sub;
  const int blocks = static_cast<int>(std::ceil(horizon / sc.dt));

  std::vector<QuadState> states(n);
  for (int i = 0; i < n; ++i) {
    states[i].position = {sc.initial_positions[i].x(), sc.initial_positions[i].y(),
                          cfg.hover_altitude};
  }

  // Planar positions across the current block, [substep 0..sub][agent].
  std::vector<std::vector<Point2>> block(sub + 1, std::vector<Point2>(n));
  for (int i = 0; i < n; ++i) block[0][i] = states[i].position.head<2>();

  std::vector<double> pair_min(static_cast<std::size_t>(n) * n,
                               std::numeric_limits<double>::infinity());
  std::vector<double> pair_min_time(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> prev_dist(static_cast<std::size_t>(n) * n,
                                std::numeric_limits<double>::infinity());
  const double near_threshold = 2.0 * sc.safety_distance;

  {
    double e0 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = (block[0][i] - block[0][j]).norm();
        prev_dist[static_cast<std::size_t>(i) * n + j] = d;
        e0 = std::min(e0, d);
      }
    }
    log.min_E = std::min(log.min_E, e0);
    log.times.push_back(0.0);
    log.E_trace.push_back(e0);
    if (options.record_trace) log.positions.push_back(block[0]);
  }

  for (int b = 0; b < blocks && !log.unstable; ++b) {
    const double t0 = b * sc.dt;
    for (int i = 0; i < n; ++i) {
      const QuadrotorParams& params =
          per_agent_params ? (*per_agent_params)[i] : cfg.params;
      for (int s = 0; s < sub; ++s) {
        const double t = t0 + s * h;
        const double moving = std::clamp(t - delays[i], 0.0, assignment.agents[i].t_f);
        const bool in_transit = t >= delays[i] && t < arrival[i];
        const Point2 ref_p = sc.initial_positions[i] + sc.speed * moving * heading[i];
        const Point2 ref_v = in_transit ? Point2(sc.speed * heading[i]) : Point2(0.0, 0.0);
        const Eigen::Vector3d desired_position{ref_p.x(), ref_p.y(), cfg.hover_altitude};
        const Eigen::Vector3d desired_velocity{ref_v.x(), ref_v.y(), 0.0};
        const ControlInput u =
            control_step(states[i], desired_position, desired_velocity, 0.0, cfg.gains, params);
        states[i] = integrate(states[i], u, params, h);
        block[s + 1][i] = states[i].position.head<2>();
      }
      if (std::max(std::abs(states[i].attitude.x()), std::abs(states[i].attitude.y())) > 0.5) {
        log.small_angle_exceeded = true;  // linearized model fidelity monitor
      }
      if (state_unstable(states[i])) log.unstable = true;
    }

    // One pairwise pass per block. Pairs near at either block boundary get
    // refined on the substep grid, where positions are piecewise linear and
    // the interpolant minimum is a segment closest approach. Conflict minima
    // only accumulate while the pair is still maneuvering (same window as the
    // kinematic check); min_E tracks the whole run.
    double e = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::size_t ij = static_cast<std::size_t>(i) * n + j;
        const double d_end = (block[sub][i] - block[sub][j]).norm();
        e = std::min(e, d_end);
        if (std::min(d_end, prev_dist[ij]) < near_threshold) {
          const double conflict_end = std::min(arrival[i], arrival[j]);
          for (int s = 0; s < sub; ++s) {
            const Point2 p0 = block[s][i] - block[s][j];
            const Point2 p1 = block[s + 1][i] - block[s + 1][j];
            const Point2 dv = p1 - p0;
            const double dv2 = dv.squaredNorm();
            const double u = dv2 > 0.0 ? std::clamp(-p0.dot(dv) / dv2, 0.0, 1.0) : 0.0;
            const double d = (p0 + u * dv).norm();
            log.min_E = std::min(log.min_E, d);
            const double t_seg = t0 + s * h;
            if (t_seg >= conflict_end) continue;
            const double u_max = std::min(1.0, (conflict_end - t_seg) / h);
            const double u_conf = std::min(u, u_max);
            const double d_conf = (p0 + u_conf * dv).norm();
            if (d_conf < pair_min[ij]) {
              pair_min[ij] = d_conf;
              pair_min_time[ij] = t_seg + u_conf * h;
            }
          }
        }
        prev_dist[ij] = d_end;
      }
    }
    log.min_E = std::min(log.min_E, e);
    log.times.push_back(t0 + sc.dt);
    log.E_trace.push_back(e);
    if (options.record_trace) log.positions.push_back(block[sub]);
    std::swap(block[0], block[sub]);
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = pair_min[static_cast<std::size_t>(i) * n + j];
      if (d <= sc.safety_distance) {
        log.conflicts.push_back({i, j, pair_min_time[static_cast<std::size_t>(i) * n + j], d});
      }
    }
  }
  return log;
}

}  // namespace

Point2 position_at(const Point2& start, const AgentGoal& goal, double speed, double t,
                   double delay) {
  if (t <= delay) return start;
  const double moving = t - delay;
  if (moving >= goal.t_f) return goal.goal;
  return start + speed * moving * Point2{std::cos(goal.psi), std::sin(goal.psi)};
}

TrajectoryLog simulate(const Scenario& scenario, const GoalAssignment& assignment,
                       const std::vector<double>& delays, const SimOptions& options) {
  const int n = static_cast<int>(scenario.initial_positions.size());
  if (static_cast<int>(assignment.agents.size()) != n) {
    throw ValidationError("simulate: assignment does not match the scenario agent count");
  }
  if (static_cast<int>(delays.size()) != n) {
    throw ValidationError("simulate: delay vector does not match the scenario agent count");
  }
  if (scenario.dt <= 0.0) throw ValidationError("simulate: dt must be positive");

  if (scenario.dynamics) {
    std::vector<QuadrotorParams> params;
    if (scenario.quad.heterogeneous) {
      RngStream rng = make_stream(scenario.seed, 0, StreamPurpose::Heterogeneity);
      params.reserve(n);
      for (int i = 0; i < n; ++i) {
        params.push_back(
            sample_heterogeneity(scenario.quad.params, scenario.quad.heterogeneity, rng));
      }
    }
    return simulate_dynamics(scenario, assignment, delays, options,
                             params.empty() ? nullptr : &params);
  }
  return simulate_kinematic(scenario, assignment, delays, options);
}

std::vector<double> sample_delays(int n, double delta_td, RngStream& rng) {
  std::vector<double> delays(n, 0.0);
  if (delta_td > 0.0) {
    for (double& d : delays) d = rng.uniform(0.0, delta_td);
  }
  return delays;
}

std::vector<Point2> perturb_positions(const std::vector<Point2>& positions, double delta_u,
                                      RngStream& rng) {
  std::vector<Point2> out = positions;
  if (delta_u > 0.0) {
    for (Point2& p : out) {
      p.x() += rng.uniform(-delta_u, delta_u);
      p.y() += rng.uniform(-delta_u, delta_u);
    }
  }
  return out;
}

}  // namespace circleform
