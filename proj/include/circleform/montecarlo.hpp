#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "circleform/metrics.hpp"
#include "circleform/simulation.hpp"

namespace circleform {

enum class AgentModel { Point, Disc };

struct StudySpec {
  int n = 20;
  double rc = 40.0;               // sampling-disc radius about the origin, m
  int trials = 1000;
  double min_separation = 0.4;    // m, pairwise at sampling time
  AgentModel model = AgentModel::Disc;
  double d_s = 0.15;              // safety distance for disc agents, m
  bool dynamics = false;
  double delta_u = 0.0;           // position-uncertainty half-width, m
  double delta_td = 0.0;          // max communication delay, s
  std::uint64_t seed = 0;
  double speed = 0.5;             // m/s
  double delta = 0.5;             // 0.2 for point studies, 0.5 for disc studies
  double dt = 0.01;               // s
  double circle_margin = 0.05;    // enclosing-circle inflation
  QuadrotorConfig quad;
};

// Positions uniform over the disc of radius rc, redrawn until the pairwise
// separation constraint holds; the boundary circle is the inflated minimum
// enclosing circle of the draw.
Scenario sample_scenario(const StudySpec& spec, int trial_index);

struct StudyResult {
  StudySpec spec;
  MonteCarloReport report;
  std::vector<TrialMetrics> trial_metrics;  // successful trials, in trial order

  // Assignment audit aggregated over all successful trials.
  double min_goal_gap = std::numeric_limits<double>::infinity();
  bool all_goals_in_search_space = true;
  double min_E = std::numeric_limits<double>::infinity();
};

// Runs every trial (sample -> perturb -> assign -> simulate -> metrics) and
// folds the results in trial order, so the outcome is identical for any jobs
// count. Per-trial failures are excluded from aggregates and counted.
StudyResult run_study(const StudySpec& spec, int jobs = 1,
                      const std::function<void(int, int)>& progress = {});

}  // namespace circleform
