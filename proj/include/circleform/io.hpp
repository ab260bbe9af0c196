#pragma once

#include <string>
#include <vector>

#include "circleform/assignment.hpp"
#include "circleform/geometry.hpp"
#include "circleform/montecarlo.hpp"
#include "circleform/simulation.hpp"

namespace circleform {

// Scenario file payload: agents with stable ids plus the Scenario proper.
// schema_version pins the layout; angles are radians in [0, 2*pi), lengths
// meters, times seconds.
struct ScenarioFile {
  int schema_version = 1;
  std::vector<int> ids;  // aligned with scenario.initial_positions
  Scenario scenario;
  bool has_circle = false;  // circle was given explicitly (not derived)
};

ScenarioFile load_scenario_file(const std::string& path);
void save_scenario_file(const ScenarioFile& file, const std::string& path);
ScenarioFile parse_scenario_json(const std::string& text);
std::string scenario_to_json(const ScenarioFile& file);

// Validates ids/coordinates/parameters and fills in a missing circle with the
// inflated minimum enclosing circle.
void finalize_scenario(ScenarioFile& file, double margin = 0.05);

// Goals payload: everything needed to replay the motion without recomputing
// the assignment.
std::string goals_to_json(const GoalAssignment& assignment, const ScenarioFile& file,
                          const ConvexLayerSet& layers);
GoalAssignment parse_goals_json(const std::string& text);
void save_goals(const GoalAssignment& assignment, const ScenarioFile& file,
                const ConvexLayerSet& layers, const std::string& path);

StudySpec parse_study_json(const std::string& text);
std::string study_to_json(const StudySpec& spec);
StudySpec load_study(const std::string& path);

std::string report_to_json(const StudyResult& result);
MonteCarloReport parse_report_json(const std::string& text);
void save_report(const StudyResult& result, const std::string& path);

// One CSV row per study, header included: the table layout used by the
// conflict-analysis summaries.
std::string report_csv_row(const StudyResult& result, bool with_header);

void write_trajectory_csv(const TrajectoryLog& log, const std::vector<int>& ids,
                          const std::string& path);
void write_etrace_csv(const TrajectoryLog& log, const std::string& path);

// Reads back a trajectory CSV into (times, per-step positions); inverse of
// write_trajectory_csv for replay tooling.
std::pair<std::vector<double>, std::vector<std::vector<Point2>>> read_trajectory_csv(
    const std::string& path);

// Named generator presets.
//   hexagon_example2: 54 agents on two nested regular hexagons (sides 8 m and
//   6 m, 24 agents each placed at equal perimeter spacing starting from the
//   rightmost vertex) plus 6 agents equispaced on the segment
//   (-2.9,0)-(2.9,0); boundary circle (0,0) radius 9.4 m.
//   random_disc: n agents uniform in a disc with a minimum-separation
//   constraint, boundary from the enclosing-circle rule.
ScenarioFile generate_preset(const std::string& name, int n = 20, double rc = 4.0,
                             double min_separation = 0.01, std::uint64_t seed = 0);

}  // namespace circleform
