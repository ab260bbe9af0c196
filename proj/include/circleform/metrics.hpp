#pragma once

#include <vector>

#include "circleform/assignment.hpp"
#include "circleform/types.hpp"

namespace circleform {

struct TrialMetrics {
  std::vector<double> M;        // per-agent path ratio, >= 1 up to tolerance
  double S_m = 0.0;             // swarm relative path excess (0.0172 = 1.72 %)
  int n_conflicts = 0;          // offending pairs in the trial
  double min_E = 0.0;           // minimum pairwise distance over the motion
  double max_tf = 0.0;          // last arrival time, s
  double assign_seconds = 0.0;  // wall clock of layers + goal assignment
};

struct MonteCarloReport {
  double P_col = 0.0;      // fraction of trials with at least one conflict
  double mu_col = 0.0;     // mean conflicts over conflicted trials
  double sigma_col = 0.0;  // population std over conflicted trials
  int N_max_col = 0;       // max conflicts in any conflicted trial
  double S_m_avg = 0.0;    // mean S_m over all trials
  int trials = 0;
  int failed_trials = 0;   // excluded from the aggregates above
};

// Ratio of the assigned path length to the agent's radial distance to the
// boundary (1 = the radial optimum). `planned_positions` are the positions
// the assignment was computed from.
double metric_M(int agent, const GoalAssignment& assignment,
                const std::vector<Point2>& planned_positions);

// Relative excess of the summed path lengths over the summed radial
// shortfalls.
double metric_S(const GoalAssignment& assignment, const std::vector<Point2>& planned_positions);

// Conflict statistics use only the conflicted trials (zeros when none);
// sigma is the population form.
MonteCarloReport aggregate(const std::vector<TrialMetrics>& trials);

}  // namespace circleform
