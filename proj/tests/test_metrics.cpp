#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "circleform/metrics.hpp"
#include "oracles.hpp"

using namespace circleform;

namespace {

GoalAssignment assign_points(const std::vector<Point2>& pts, const Circle& circle) {
  return assign_all(pts, circle, convex_layers(pts), 0.5, 0.2);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("a radial goal scores exactly one") {
  std::vector<Point2> pts;
  for (int k = 0; k < 3; ++k) {
    const double a = kTwoPi * k / 3.0;
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  const Circle circle{{0, 0}, 3.0};
  const GoalAssignment a = assign_points(pts, circle);
  for (int i = 0; i < 3; ++i) {
    CHECK(metric_M(i, a, pts) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(metric_S(a, pts) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the radial exit is the pointwise floor of the ratio") {
  const std::vector<Point2> pts = oracle::random_points_in_disc(30, 4.0, 8, 0.05);
  const Circle circle{{0, 0}, 4.8};
  const GoalAssignment a = assign_points(pts, circle);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double m = metric_M(static_cast<int>(i), a, pts);
    CHECK(m >= 1.0 - 1e-9);
    // Dense circle sampling cannot beat the radial shortfall.
    const double shortfall = circle.radius - (pts[i] - circle.center).norm();
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 10000; ++s) {
      best = std::min(best, (circle.point_at(kTwoPi * s / 10000.0) - pts[i]).norm());
    }
    CHECK(shortfall <= best + 1e-6);
  }
}

TEST_CASE("swarm excess agrees with the per-agent data") {
  const std::vector<Point2> pts = oracle::random_points_in_disc(20, 3.0, 9, 0.05);
  const Circle circle{{0, 0}, 3.6};
  const GoalAssignment a = assign_points(pts, circle);
  const double s_direct = metric_S(a, pts);

  double paths = 0.0, shortest = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double shortfall = circle.radius - (pts[i] - circle.center).norm();
    paths += metric_M(static_cast<int>(i), a, pts) * shortfall;
    shortest += shortfall;
  }
  CHECK(s_direct == doctest::Approx(paths / shortest - 1.0).epsilon(1e-12));
}

TEST_CASE("boundary agents are rejected by the division guard") {
  GoalAssignment a;
  a.circle = {{0, 0}, 2.0};
  a.agents.resize(1);
  a.agents[0].goal = {2.0, 0.0};
  const std::vector<Point2> on_boundary{{2.0 - 1e-12, 0.0}};
  CHECK_THROWS_AS(metric_M(0, a, on_boundary), ValidationError);
}

TEST_CASE("aggregate reproduces the worked conflict statistics") {
  // 1000 trials, 36 of them with exactly one conflict.
  std::vector<TrialMetrics> trials(1000);
  for (int i = 0; i < 36; ++i) trials[i * 7].n_conflicts = 1;
  const MonteCarloReport r = aggregate(trials);
  CHECK(r.P_col == doctest::Approx(0.036));
  CHECK(r.mu_col == doctest::Approx(1.0));
  CHECK(r.sigma_col == doctest::Approx(0.0));
  CHECK(r.N_max_col == 1);
}

TEST_CASE("aggregate with no conflicted trials zeroes the conflict block") {
  std::vector<TrialMetrics> trials(50);
  for (std::size_t i = 0; i < trials.size(); ++i) trials[i].S_m = 0.01 * i;
  const MonteCarloReport r = aggregate(trials);
  CHECK(r.P_col == 0.0);
  CHECK(r.mu_col == 0.0);
  CHECK(r.sigma_col == 0.0);
  CHECK(r.N_max_col == 0);
  CHECK(r.S_m_avg == doctest::Approx(0.01 * 49 / 2.0));
}

TEST_CASE("aggregate uses the population deviation over conflicted trials") {
  std::vector<TrialMetrics> trials(10);
  trials[2].n_conflicts = 1;
  trials[7].n_conflicts = 2;
  const MonteCarloReport r = aggregate(trials);
  CHECK(r.P_col == doctest::Approx(0.2));
  CHECK(r.mu_col == doctest::Approx(1.5));
  CHECK(r.sigma_col == doctest::Approx(0.5));
  CHECK(r.N_max_col == 2);
}

TEST_CASE("aggregate is permutation-invariant") {
  RngStream rng(55);
  std::vector<TrialMetrics> trials(200);
  for (TrialMetrics& t : trials) {
    t.S_m = rng.uniform(0.0, 0.05);
    t.n_conflicts = rng.uniform() < 0.1 ? 1 + static_cast<int>(rng.uniform() * 3) : 0;
  }
  const MonteCarloReport base = aggregate(trials);
  std::vector<TrialMetrics> shuffled = trials;
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.next_u64() % i]);
  }
  const MonteCarloReport other = aggregate(shuffled);
  CHECK(base.P_col == doctest::Approx(other.P_col).epsilon(1e-12));
  CHECK(base.mu_col == doctest::Approx(other.mu_col).epsilon(1e-12));
  CHECK(base.sigma_col == doctest::Approx(other.sigma_col).epsilon(1e-12));
  CHECK(base.N_max_col == other.N_max_col);
  CHECK(base.S_m_avg == doctest::Approx(other.S_m_avg).epsilon(1e-12));
}

}  // TEST_SUITE
