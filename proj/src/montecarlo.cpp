#include "circleform/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include "circleform/enclosing_circle.hpp"
#include "circleform/geometry.hpp"

namespace circleform {

Scenario sample_scenario(const StudySpec& spec, int trial_index) {
  if (spec.n < 1) throw ValidationError("sample_scenario: n must be at least 1");
  if (spec.rc <= 0.0) throw ValidationError("sample_scenario: sampling radius must be positive");
  if (spec.min_separation > 0.0) {
    // Feasibility guard: the separation discs must fit with 2x area margin.
    const double disc_area = spec.n * kPi * 0.25 * spec.min_separation * spec.min_separation;
    if (2.0 * disc_area > kPi * spec.rc * spec.rc) {
      throw ValidationError("sample_scenario: packing infeasible for n=" + std::to_string(spec.n) +
                            " at min separation " + std::to_string(spec.min_separation));
    }
  }

  RngStream rng = make_stream(spec.seed, static_cast<std::uint64_t>(trial_index),
                              StreamPurpose::Positions);
  std::vector<Point2> pts;
  pts.reserve(spec.n);
  long rejections = 0;
  while (static_cast<int>(pts.size()) < spec.n) {
    const double r = spec.rc * std::sqrt(rng.uniform());
    const double a = rng.uniform(0.0, kTwoPi);
    const Point2 p{r * std::cos(a), r * std::sin(a)};
    bool ok = true;
    for (const Point2& q : pts) {
      if ((p - q).norm() < spec.min_separation) {
        ok = false;
        break;
      }
    }
    if (ok) {
      pts.push_back(p);
    } else if (++rejections >= 1000000) {
      throw ValidationError("sample_scenario: gave up packing after 1e6 rejected draws");
    }
  }

  Scenario sc;
  sc.circle = enclosing_circle(pts, spec.circle_margin);
  sc.initial_positions = std::move(pts);
  sc.speed = spec.speed;
  sc.agent_radius = (spec.model == AgentModel::Disc) ? 0.5 * spec.d_s : 0.0;
  sc.safety_distance = (spec.model == AgentModel::Disc) ? spec.d_s : 0.0;
  sc.delta = spec.delta;
  sc.delta_u = spec.delta_u;
  sc.delta_td = spec.delta_td;
  sc.dt = spec.dt;
  sc.dynamics = spec.dynamics;
  sc.quad = spec.quad;
  sc.quad.heterogeneous = spec.dynamics;
  // Per-trial seed so in-simulation draws stay keyed by (seed, trial).
  sc.seed = splitmix64(splitmix64(spec.seed) ^
                       (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial_index) + 1)));
  return sc;
}

namespace {

struct TrialOutcome {
  bool failed = false;
  TrialMetrics metrics;
  double min_goal_gap = std::numeric_limits<double>::infinity();
  bool goals_in_search_space = true;
};

TrialOutcome run_trial(const StudySpec& spec, int trial) {
  TrialOutcome out;
  try {
    Scenario sc = sample_scenario(spec, trial);

    // The planner sees perturbed positions; the agents fly from true ones.
    RngStream perturb_rng = make_stream(spec.seed, trial, StreamPurpose::Perturbation);
    const std::vector<Point2> planned =
        perturb_positions(sc.initial_positions, spec.delta_u, perturb_rng);
    Circle circle = sc.circle;
    if (spec.delta_u > 0.0) circle = enclosing_circle(planned, spec.circle_margin);

    const auto t0 = std::chrono::steady_clock::now();
    const ConvexLayerSet layers = convex_layers(planned);
    GoalAssignment assignment = assign_all(planned, circle, layers, spec.speed, spec.delta);
    const auto t1 = std::chrono::steady_clock::now();

    RngStream delay_rng = make_stream(spec.seed, trial, StreamPurpose::Delays);
    const std::vector<double> delays = sample_delays(spec.n, spec.delta_td, delay_rng);

    const TrajectoryLog log = simulate(sc, assignment, delays);
    if (log.unstable) {
      out.failed = true;
      return out;
    }

    const AssignmentAudit audit = audit_assignment(assignment, layers, planned);
    out.min_goal_gap = audit.min_goal_gap;
    out.goals_in_search_space = audit.all_in_search_space;

    TrialMetrics& m = out.metrics;
    m.M.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) m.M[i] = metric_M(i, assignment, planned);
    m.S_m = metric_S(assignment, planned);
    m.n_conflicts = log.conflict_count();
    m.min_E = log.min_E;
    for (const AgentGoal& g : assignment.agents) m.max_tf = std::max(m.max_tf, g.t_f);
    m.assign_seconds = std::chrono::duration<double>(t1 - t0).count();
  } catch (const std::exception&) {
    out.failed = true;
  }
  return out;
}

}  // namespace

StudyResult run_study(const StudySpec& spec, int jobs,
                      const std::function<void(int, int)>& progress) {
  if (spec.trials < 1) throw ValidationError("run_study: at least one trial required");
  if (spec.n < 3) throw ValidationError("run_study: scenarios need at least 3 agents");

  std::vector<TrialOutcome> outcomes(spec.trials);
  std::atomic<int> next{0};
  std::atomic<int> done{0};

  const int workers = std::max(1, std::min(jobs, spec.trials));
  auto work = [&] {
    for (;;) {
      const int trial = next.fetch_add(1);
      if (trial >= spec.trials) return;
      outcomes[trial] = run_trial(spec, trial);
      const int d = done.fetch_add(1) + 1;
      if (progress) progress(d, spec.trials);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  StudyResult result;
  result.spec = spec;
  int failed = 0;
  for (int trial = 0; trial < spec.trials; ++trial) {
    const TrialOutcome& o = outcomes[trial];
    if (o.failed) {
      ++failed;
      continue;
    }
    result.trial_metrics.push_back(o.metrics);
    result.min_goal_gap = std::min(result.min_goal_gap, o.min_goal_gap);
    result.all_goals_in_search_space &= o.goals_in_search_space;
    result.min_E = std::min(result.min_E, o.metrics.min_E);
  }
  if (result.trial_metrics.empty()) {
    throw ValidationError("run_study: every trial failed");
  }
  result.report = aggregate(result.trial_metrics);
  result.report.failed_trials = failed;
  return result;
}

}  // namespace circleform
