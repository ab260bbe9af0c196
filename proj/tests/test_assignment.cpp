#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "circleform/assignment.hpp"
#include "circleform/io.hpp"
#include "oracles.hpp"

using namespace circleform;

namespace {

double chord(const Circle& c, const PolarPoint& agent, double phi) {
  const Point2 pos = c.center + agent.r * Point2{std::cos(agent.phi), std::sin(agent.phi)};
  return (c.point_at(phi) - pos).norm();
}

GoalAssignment assign_points(const std::vector<Point2>& pts, const Circle& circle, double speed,
                             double delta) {
  return assign_all(pts, circle, convex_layers(pts), speed, delta);
}

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("agent angle inside the arc exits radially") {
  const GoalArc arc{{{0, 0}, 2.0}, GoalArcKind::Arc, 0.1, 0.8};
  CHECK(nearest_goal_on_arc({1.0, 0.3}, arc) == doctest::Approx(0.3));
}

TEST_CASE("agent below the arc takes the nearer endpoint") {
  const Circle circle{{0, 0}, 2.0};
  const GoalArc arc{circle, GoalArcKind::Arc, kPi / 4.0, kPi / 4.0};
  const PolarPoint agent{1.0, 0.0};  // position (1, 0)
  const double goal = nearest_goal_on_arc(agent, arc);
  CHECK(goal == doctest::Approx(kPi / 4.0));
  const Point2 g = circle.point_at(goal);
  CHECK(g.x() == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.y() == doctest::Approx(std::sqrt(2.0)));

  // Dense arc sampling confirms the endpoint is the distance minimizer.
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= 10000; ++s) {
    const double phi = arc.phi_start + arc.width * s / 10000.0;
    best = std::min(best, chord(circle, agent, phi));
  }
  CHECK(chord(circle, agent, goal) <= best + 1e-9);
}

TEST_CASE("wrapped distances decide the endpoint on the far side") {
  const Circle circle{{0, 0}, 2.0};
  const GoalArc arc{circle, GoalArcKind::Arc, kPi / 4.0, kPi / 4.0};
  const PolarPoint agent{1.0, kPi};
  const double goal = nearest_goal_on_arc(agent, arc);
  CHECK(goal == doctest::Approx(kPi / 2.0));
  // The farther endpoint in angle is also farther in distance.
  CHECK(chord(circle, agent, kPi / 4.0) > chord(circle, agent, kPi / 2.0));
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= 100000; ++s) {
    const double phi = arc.phi_start + arc.width * s / 100000.0;
    best = std::min(best, chord(circle, agent, phi));
  }
  CHECK(chord(circle, agent, goal) <= best + 1e-9);
}

TEST_CASE("point pair: symmetric tie takes the smaller polar angle") {
  const Circle circle{{0, 0}, 2.0};
  const GoalArc pair{circle, GoalArcKind::PointPair, kPi / 2.0, kPi};
  const PolarPoint agent{0.5, 0.0};  // equidistant from both candidates
  CHECK(nearest_goal_on_pointpair(agent, pair) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("point pair: strictly closer candidate wins") {
  const Circle circle{{0, 0}, 2.0};
  const GoalArc pair{circle, GoalArcKind::PointPair, kPi / 2.0, kPi};
  const PolarPoint up = to_polar({0.5, 0.1}, circle.center);
  CHECK(nearest_goal_on_pointpair(up, pair) == doctest::Approx(kPi / 2.0));
  const PolarPoint down = to_polar({0.5, -0.1}, circle.center);
  CHECK(nearest_goal_on_pointpair(down, pair) == doctest::Approx(3.0 * kPi / 2.0));
}

TEST_CASE("point pair matches the two-candidate argmin for random agents") {
  RngStream rng(17);
  const Circle circle{{0, 0}, 3.0};
  for (int trial = 0; trial < 200; ++trial) {
    const double pa = rng.uniform(0.0, kTwoPi);
    const GoalArc pair{circle, GoalArcKind::PointPair, pa, kPi};
    const double r = rng.uniform(0.05, 2.9);
    const double phi = rng.uniform(0.0, kTwoPi);
    const PolarPoint agent{r, phi};
    const double got = nearest_goal_on_pointpair(agent, pair);
    const double da = chord(circle, agent, pa);
    const double db = chord(circle, agent, wrap_angle(pa + kPi));
    const double expect = da < db ? wrap_angle(pa) : wrap_angle(pa + kPi);
    if (std::abs(da - db) > 1e-8) CHECK(got == doctest::Approx(expect));
  }
}

TEST_CASE("conflict shift: symmetric gaps resolve clockwise") {
  const GoalArc arc{{{0, 0}, 5.0}, GoalArcKind::Arc, 0.0, 1.0};
  AssignedSet assigned;
  assigned.insert(0.5);
  const double phi = resolve_conflict(0.5, arc, assigned, 0.2);
  CHECK(phi == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("conflict shift: wider gap on the counterclockwise side") {
  const GoalArc arc{{{0, 0}, 5.0}, GoalArcKind::Arc, 0.0, 1.0};
  AssignedSet assigned;
  assigned.insert(0.2);
  const double phi = resolve_conflict(0.2, arc, assigned, 0.2);
  CHECK(phi == doctest::Approx(0.36).epsilon(1e-12));
}

TEST_CASE("conflict shift lands strictly between committed neighbors on the arc") {
  RngStream rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const double start = rng.uniform(0.0, kTwoPi);
    const double width = rng.uniform(0.2, kTwoPi - 0.2);
    const GoalArc arc{{{0, 0}, 4.0}, GoalArcKind::Arc, start, width};
    AssignedSet assigned;
    const int k = 1 + static_cast<int>(rng.uniform() * 4);
    std::vector<double> locals;
    for (int i = 0; i < k; ++i) {
      const double local = rng.uniform(0.0, width);
      locals.push_back(local);
      assigned.insert(start + local);
    }
    const double conflicted = locals[static_cast<int>(rng.uniform() * k)];
    const double delta = rng.uniform(0.05, 0.95);
    const double got = resolve_conflict(start + conflicted, arc, assigned, delta);
    CHECK(arc.contains_angle(got, 1e-12));
    CHECK_FALSE(assigned.conflicts(got, 1e-12));
  }
}

TEST_CASE("full-circle conflicts shift within the circular gap structure") {
  const GoalArc full{{{0, 0}, 3.0}, GoalArcKind::FullCircle, 0.0, kTwoPi};
  AssignedSet assigned;
  assigned.insert(1.0);
  assigned.insert(2.0);
  // Clockwise gap (the long way round to 2.0) is wider, so the shift goes
  // clockwise: (1-d)*1.0 + d*(1.0 - (2*pi - 1.0)).
  const double got = resolve_conflict(1.0, full, assigned, 0.2);
  CHECK(got == doctest::Approx(wrap_angle(0.8 - 0.2 * (kTwoPi - 2.0))).epsilon(1e-12));
  CHECK_FALSE(assigned.conflicts(got));
}

TEST_CASE("point-pair conflicts prefer the free candidate, then the larger gap") {
  AssignedSet one;
  one.insert(1.0);
  CHECK(resolve_pointpair_conflict(1.0, 4.0, one, 0.2) == doctest::Approx(4.0));

  AssignedSet both;
  both.insert(1.0);
  both.insert(4.0);
  const double got = resolve_pointpair_conflict(1.0, 4.0, both, 0.2);
  // Gap below 1.0 (back to 4.0 clockwise) is 2*pi - 3 > 3, so shift clockwise.
  CHECK(got == doctest::Approx(0.8 * 1.0 + 0.2 * (1.0 - (kTwoPi - 3.0))).epsilon(1e-12));
  CHECK_FALSE(both.conflicts(got));
}

TEST_CASE("an agent exactly at the circle center exits along angle zero") {
  const std::vector<Point2> pts{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}};
  const Circle circle{{0, 0}, 2.0};
  const GoalAssignment a = assign_points(pts, circle, 0.5, 0.2);
  CHECK(a.agents[4].goal_phi == 0.0);
  CHECK((a.agents[4].goal - Point2{2.0, 0.0}).norm() < 1e-12);
}

TEST_CASE("lower delta keeps the modified goal closer to the requested one") {
  const GoalArc arc{{{0, 0}, 5.0}, GoalArcKind::Arc, 0.0, 1.0};
  AssignedSet assigned;
  assigned.insert(0.2);
  double prev = 0.0;
  for (const double delta : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    const double shifted = resolve_conflict(0.2, arc, assigned, delta);
    const double distance = angle_distance(shifted, 0.2);
    CHECK(distance > prev);
    prev = distance;
  }
}

TEST_CASE("radially aligned agents on nested layers get distinct goals") {
  // Inner square and outer square share polar angles, so the outer agents'
  // radial goals collide with the inner ones' and must shift.
  const std::vector<Point2> pts{{3, 3}, {-3, 3}, {-3, -3}, {3, -3},
                                {1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  const Circle circle{{0, 0}, 5.0};
  const GoalAssignment a = assign_points(pts, circle, 0.5, 0.2);

  for (int outer = 0; outer < 4; ++outer) {
    const int inner = outer + 4;
    CHECK_FALSE(a.agents[inner].was_modified);  // inner layer commits first
    CHECK(a.agents[outer].was_modified);
    CHECK(angle_distance(a.agents[outer].goal_phi, a.agents[inner].goal_phi) > tol::angle_eq);
    // Inner agents exit radially.
    const double radial = to_polar(pts[inner], circle.center).phi;
    CHECK(a.agents[inner].goal_phi == doctest::Approx(radial));
  }
  const ConvexLayerSet layers = convex_layers(pts);
  const AssignmentAudit audit = audit_assignment(a, layers, pts);
  CHECK(audit.min_goal_gap > tol::angle_eq);
  CHECK(audit.all_in_search_space);
}

TEST_CASE("equilateral triangle exits radially with no modifications") {
  std::vector<Point2> pts;
  for (int k = 0; k < 3; ++k) {
    const double a = kTwoPi * k / 3.0 + 0.3;
    pts.emplace_back(2.0 * std::cos(a), 2.0 * std::sin(a));
  }
  const Circle circle{{0, 0}, 4.0};
  const GoalAssignment a = assign_points(pts, circle, 0.5, 0.2);
  for (int i = 0; i < 3; ++i) {
    CHECK_FALSE(a.agents[i].was_modified);
    const double radial = to_polar(pts[i], circle.center).phi;
    CHECK(a.agents[i].goal_phi == doctest::Approx(radial));
    CHECK(a.agents[i].t_f == doctest::Approx(2.0 / 0.5));
  }
}

TEST_CASE("random scenarios keep goals unique, contained and near-optimal") {
  for (const std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const std::vector<Point2> pts = oracle::random_points_in_disc(25, 4.0, seed, 0.05);
    const Circle circle{{0, 0}, 4.0 * 1.2};
    const ConvexLayerSet layers = convex_layers(pts);
    const GoalAssignment a = assign_all(pts, circle, layers, 0.5, 0.2);

    const AssignmentAudit audit = audit_assignment(a, layers, pts);
    CHECK(audit.min_goal_gap > tol::angle_eq);
    CHECK(audit.all_in_search_space);

    for (std::size_t i = 0; i < pts.size(); ++i) {
      // Goals land on the circle.
      CHECK(std::abs((a.agents[i].goal - circle.center).norm() - circle.radius) <=
            1e-9 * circle.radius);
      // Heading and arrival time match the straight leg.
      const Point2 leg = a.agents[i].goal - pts[i];
      CHECK(a.agents[i].t_f == doctest::Approx(leg.norm() / 0.5));
      CHECK(angle_distance(a.agents[i].psi, std::atan2(leg.y(), leg.x())) < 1e-12);

      if (!a.agents[i].was_modified) {
        // Unmodified goals beat dense arc sampling up to tolerance.
        const SearchSpace ss = build_search_space(static_cast<int>(i), layers, pts);
        const GoalArc arc = intersect_with_circle(ss, circle);
        if (arc.kind == GoalArcKind::Arc) {
          const PolarPoint polar = to_polar(pts[i], circle.center);
          double best = std::numeric_limits<double>::infinity();
          for (int s = 0; s <= 10000; ++s) {
            const double phi = arc.phi_start + arc.width * s / 10000.0;
            best = std::min(best, chord(circle, polar, phi));
          }
          CHECK(leg.norm() <= best + 1e-6);
        }
      }
    }
  }
}

TEST_CASE("path points stay closer to their own agent than to same-or-inner layers") {
  for (const std::uint64_t seed : {71u, 72u, 73u}) {
    const std::vector<Point2> pts = oracle::random_points_in_disc(20, 4.0, seed, 0.05);
    const Circle circle{{0, 0}, 5.0};
    const ConvexLayerSet layers = convex_layers(pts);
    const GoalAssignment a = assign_all(pts, circle, layers, 0.5, 0.2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (int s = 0; s <= 20; ++s) {
        const Point2 z = pts[i] + (s / 20.0) * (a.agents[i].goal - pts[i]);
        const double own = (z - pts[i]).norm();
        for (std::size_t j = 0; j < pts.size(); ++j) {
          if (j == i || layers.layer_of[j] < layers.layer_of[i]) continue;
          CHECK(own < (z - pts[j]).norm());
        }
      }
    }
  }
}

TEST_CASE("54-agent example: arrival times and modification pattern") {
  const ScenarioFile file = generate_preset("hexagon_example2");
  const std::vector<Point2>& pts = file.scenario.initial_positions;
  const ConvexLayerSet layers = convex_layers(pts);
  const GoalAssignment a =
      assign_all(pts, file.scenario.circle, layers, file.scenario.speed, file.scenario.delta);

  double max_tf = 0.0;
  for (const AgentGoal& g : a.agents) max_tf = std::max(max_tf, g.t_f);
  // The innermost collinear agents at x = +-0.58 m exit perpendicular to the
  // segment: path sqrt(9.4^2 - 0.58^2) = 9.3821 m at 0.5 m/s.
  CHECK(max_tf == doctest::Approx(std::sqrt(9.4 * 9.4 - 0.58 * 0.58) / 0.5).epsilon(1e-9));

  const AssignmentAudit audit = audit_assignment(a, layers, pts);
  CHECK(audit.min_goal_gap > tol::angle_eq);
  CHECK(audit.all_in_search_space);

  // The two hexagons are radially aligned, so outer-hexagon agents shift.
  int modified = 0;
  for (const AgentGoal& g : a.agents) modified += g.was_modified ? 1 : 0;
  CHECK(modified >= 24);
}

}  // TEST_SUITE
