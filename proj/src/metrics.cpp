#include "circleform/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace circleform {

namespace {

double radial_shortfall(const Point2& position, const Circle& circle) {
  const double margin = circle.radius - (position - circle.center).norm();
  if (margin < 1e-9) {
    throw ValidationError("metric: agent is on or outside the boundary circle; the shortest "
                          "distance to the boundary is degenerate");
  }
  return margin;
}

}  // namespace

double metric_M(int agent, const GoalAssignment& assignment,
                const std::vector<Point2>& planned_positions) {
  const Point2& x0 = planned_positions[agent];
  const double path = (assignment.agents[agent].goal - x0).norm();
  return path / radial_shortfall(x0, assignment.circle);
}

double metric_S(const GoalAssignment& assignment, const std::vector<Point2>& planned_positions) {
  double paths = 0.0, shortest = 0.0;
  for (std::size_t i = 0; i < planned_positions.size(); ++i) {
    paths += (assignment.agents[i].goal - planned_positions[i]).norm();
    shortest += radial_shortfall(planned_positions[i], assignment.circle);
  }
  return paths / shortest - 1.0;
}

MonteCarloReport aggregate(const std::vector<TrialMetrics>& trials) {
  if (trials.empty()) throw ValidationError("aggregate: no trials");
  MonteCarloReport r;
  r.trials = static_cast<int>(trials.size());

  int conflicted = 0;
  double sum_counts = 0.0;
  for (const TrialMetrics& t : trials) {
    r.S_m_avg += t.S_m;
    if (t.n_conflicts > 0) {
      ++conflicted;
      sum_counts += t.n_conflicts;
      r.N_max_col = std::max(r.N_max_col, t.n_conflicts);
    }
  }
  r.S_m_avg /= r.trials;
  r.P_col = static_cast<double>(conflicted) / r.trials;
  if (conflicted > 0) {
    r.mu_col = sum_counts / conflicted;
    double ss = 0.0;
    for (const TrialMetrics& t : trials) {
      if (t.n_conflicts > 0) {
        const double d = t.n_conflicts - r.mu_col;
        ss += d * d;
      }
    }
    r.sigma_col = std::sqrt(ss / conflicted);
  }
  return r;
}

}  // namespace circleform
