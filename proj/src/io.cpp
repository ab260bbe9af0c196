#include "circleform/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "circleform/enclosing_circle.hpp"

namespace circleform {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError("scenario field '" + key + "' missing or not a number");
  }
  return j.at(key).get<double>();
}

json vec3_to_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec3_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError("field '" + key + "' must be an array of three numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json quad_to_json(const QuadrotorConfig& q) {
  json j;
  j["mass"] = q.params.mass;
  j["Jx"] = q.params.Jx;
  j["Jy"] = q.params.Jy;
  j["Jz"] = q.params.Jz;
  j["gravity"] = q.params.gravity;
  j["kp"] = vec3_to_json(q.gains.kp);
  j["kd"] = vec3_to_json(q.gains.kd);
  j["kp_att"] = vec3_to_json(q.gains.kp_att);
  j["kd_att"] = vec3_to_json(q.gains.kd_att);
  j["heterogeneity"] =
      q.heterogeneity == HeterogeneityMode::Correlated ? "correlated" : "independent";
  j["heterogeneous"] = q.heterogeneous;
  j["dt_dyn"] = q.dt_dyn;
  j["settle_time"] = q.settle_time;
  j["hover_altitude"] = q.hover_altitude;
  return j;
}

QuadrotorConfig quad_from_json(const json& j) {
  QuadrotorConfig q;
  if (j.contains("mass")) q.params.mass = j["mass"].get<double>();
  if (j.contains("Jx")) q.params.Jx = j["Jx"].get<double>();
  if (j.contains("Jy")) q.params.Jy = j["Jy"].get<double>();
  if (j.contains("Jz")) q.params.Jz = j["Jz"].get<double>();
  if (j.contains("gravity")) q.params.gravity = j["gravity"].get<double>();
  if (j.contains("kp")) q.gains.kp = vec3_from_json(j["kp"], "kp");
  if (j.contains("kd")) q.gains.kd = vec3_from_json(j["kd"], "kd");
  if (j.contains("kp_att")) q.gains.kp_att = vec3_from_json(j["kp_att"], "kp_att");
  if (j.contains("kd_att")) q.gains.kd_att = vec3_from_json(j["kd_att"], "kd_att");
  if (j.contains("heterogeneity")) {
    const std::string mode = j["heterogeneity"].get<std::string>();
    if (mode == "correlated") {
      q.heterogeneity = HeterogeneityMode::Correlated;
    } else if (mode == "independent") {
      q.heterogeneity = HeterogeneityMode::Independent;
    } else {
      throw ValidationError("quadrotor heterogeneity must be 'correlated' or 'independent'");
    }
  }
  if (j.contains("heterogeneous")) q.heterogeneous = j["heterogeneous"].get<bool>();
  if (j.contains("dt_dyn")) q.dt_dyn = j["dt_dyn"].get<double>();
  if (j.contains("settle_time")) q.settle_time = j["settle_time"].get<double>();
  if (j.contains("hover_altitude")) q.hover_altitude = j["hover_altitude"].get<double>();
  return q;
}

}  // namespace

ScenarioFile parse_scenario_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario JSON malformed: ") + e.what());
  }
  ScenarioFile file;
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1) {
    throw ValidationError("scenario field 'schema_version' must be 1");
  }
  if (!j.contains("agents") || !j["agents"].is_array()) {
    throw ValidationError("scenario field 'agents' missing or not an array");
  }
  for (const json& a : j["agents"]) {
    if (!a.contains("id") || !a["id"].is_number_integer()) {
      throw ValidationError("agent entry is missing an integer 'id'");
    }
    file.ids.push_back(a["id"].get<int>());
    file.scenario.initial_positions.emplace_back(require_number(a, "x"), require_number(a, "y"));
  }
  if (j.contains("circle") && !j["circle"].is_null()) {
    const json& c = j["circle"];
    file.scenario.circle = {{require_number(c, "cx"), require_number(c, "cy")},
                            require_number(c, "R")};
    file.has_circle = true;
  }
  if (j.contains("parameters")) {
    const json& p = j["parameters"];
    if (p.contains("v")) file.scenario.speed = p["v"].get<double>();
    if (p.contains("delta")) file.scenario.delta = p["delta"].get<double>();
    if (p.contains("agent_radius")) file.scenario.agent_radius = p["agent_radius"].get<double>();
    if (p.contains("d_s")) file.scenario.safety_distance = p["d_s"].get<double>();
    if (p.contains("delta_u")) file.scenario.delta_u = p["delta_u"].get<double>();
    if (p.contains("delta_td")) file.scenario.delta_td = p["delta_td"].get<double>();
    if (p.contains("dt")) file.scenario.dt = p["dt"].get<double>();
    if (p.contains("dynamics")) file.scenario.dynamics = p["dynamics"].get<bool>();
    if (p.contains("quadrotor")) file.scenario.quad = quad_from_json(p["quadrotor"]);
  }
  if (j.contains("seed")) file.scenario.seed = j["seed"].get<std::uint64_t>();
  return file;
}

std::string scenario_to_json(const ScenarioFile& file) {
  json j;
  j["schema_version"] = file.schema_version;
  json agents = json::array();
  for (std::size_t i = 0; i < file.ids.size(); ++i) {
    agents.push_back({{"id", file.ids[i]},
                      {"x", file.scenario.initial_positions[i].x()},
                      {"y", file.scenario.initial_positions[i].y()}});
  }
  j["agents"] = agents;
  if (file.has_circle) {
    j["circle"] = {{"cx", file.scenario.circle.center.x()},
                   {"cy", file.scenario.circle.center.y()},
                   {"R", file.scenario.circle.radius}};
  }
  j["parameters"] = {{"v", file.scenario.speed},
                     {"delta", file.scenario.delta},
                     {"agent_radius", file.scenario.agent_radius},
                     {"d_s", file.scenario.safety_distance},
                     {"delta_u", file.scenario.delta_u},
                     {"delta_td", file.scenario.delta_td},
                     {"dt", file.scenario.dt},
                     {"dynamics", file.scenario.dynamics},
                     {"quadrotor", quad_to_json(file.scenario.quad)}};
  j["seed"] = file.scenario.seed;
  return j.dump(2) + "\n";
}

void finalize_scenario(ScenarioFile& file, double margin) {
  const Scenario& sc = file.scenario;
  const std::size_t n = sc.initial_positions.size();
  if (n < 3) throw ValidationError("scenario needs at least 3 agents");
  std::set<int> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.insert(file.ids[i]).second) {
      throw ValidationError("duplicate agent id " + std::to_string(file.ids[i]));
    }
    if (!sc.initial_positions[i].allFinite()) {
      throw ValidationError("agent " + std::to_string(file.ids[i]) +
                            " has non-finite coordinates");
    }
  }
  if (sc.speed <= 0.0) throw ValidationError("parameter v must be positive");
  if (sc.delta <= 0.0 || sc.delta >= 1.0) throw ValidationError("parameter delta must be in (0,1)");
  if (sc.dt <= 0.0) throw ValidationError("parameter dt must be positive");
  if (sc.safety_distance < 0.0) throw ValidationError("parameter d_s must be non-negative");
  if (sc.delta_u < 0.0) throw ValidationError("parameter delta_u must be non-negative");
  if (sc.delta_td < 0.0) throw ValidationError("parameter delta_td must be non-negative");

  if (file.has_circle) {
    if (file.scenario.circle.radius <= 0.0) {
      throw ValidationError("circle radius must be positive");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!sc.circle.strictly_inside(sc.initial_positions[i])) {
        throw ValidationError("agent " + std::to_string(file.ids[i]) +
                              " is not strictly inside the given circle");
      }
    }
  } else {
    file.scenario.circle = enclosing_circle(sc.initial_positions, margin);
    file.has_circle = true;
  }
}

ScenarioFile load_scenario_file(const std::string& path) {
  ScenarioFile file = parse_scenario_json(read_file(path));
  finalize_scenario(file);
  return file;
}

void save_scenario_file(const ScenarioFile& file, const std::string& path) {
  write_file(path, scenario_to_json(file));
}

std::string goals_to_json(const GoalAssignment& assignment, const ScenarioFile& file,
                          const ConvexLayerSet& layers) {
  json j;
  j["schema_version"] = 1;
  j["circle"] = {{"cx", assignment.circle.center.x()},
                 {"cy", assignment.circle.center.y()},
                 {"R", assignment.circle.radius}};
  j["layer_count"] = layers.layer_count();
  json agents = json::array();
  for (std::size_t i = 0; i < assignment.agents.size(); ++i) {
    const AgentGoal& g = assignment.agents[i];
    agents.push_back({{"id", file.ids[i]},
                      {"x0", file.scenario.initial_positions[i].x()},
                      {"y0", file.scenario.initial_positions[i].y()},
                      {"goal_x", g.goal.x()},
                      {"goal_y", g.goal.y()},
                      {"goal_phi", g.goal_phi},
                      {"psi", g.psi},
                      {"t_f", g.t_f},
                      {"layer", g.layer},
                      {"was_modified", g.was_modified}});
  }
  j["agents"] = agents;
  j["parameters"] = {{"v", file.scenario.speed}, {"delta", file.scenario.delta}};
  return j.dump(2) + "\n";
}

GoalAssignment parse_goals_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("goals JSON malformed: ") + e.what());
  }
  GoalAssignment a;
  const json& c = j.at("circle");
  a.circle = {{c.at("cx").get<double>(), c.at("cy").get<double>()}, c.at("R").get<double>()};
  for (const json& g : j.at("agents")) {
    AgentGoal goal;
    goal.goal = {g.at("goal_x").get<double>(), g.at("goal_y").get<double>()};
    goal.goal_phi = g.at("goal_phi").get<double>();
    goal.psi = g.at("psi").get<double>();
    goal.t_f = g.at("t_f").get<double>();
    goal.layer = g.at("layer").get<int>();
    goal.was_modified = g.at("was_modified").get<bool>();
    a.agents.push_back(goal);
  }
  return a;
}

void save_goals(const GoalAssignment& assignment, const ScenarioFile& file,
                const ConvexLayerSet& layers, const std::string& path) {
  write_file(path, goals_to_json(assignment, file, layers));
}

StudySpec parse_study_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("study JSON malformed: ") + e.what());
  }
  StudySpec s;
  s.n = static_cast<int>(require_number(j, "n"));
  s.rc = require_number(j, "R_c");
  s.trials = static_cast<int>(require_number(j, "trials"));
  if (j.contains("min_separation")) s.min_separation = j["min_separation"].get<double>();
  if (j.contains("model")) {
    const std::string model = j["model"].get<std::string>();
    if (model == "point") {
      s.model = AgentModel::Point;
      s.d_s = 0.0;
      s.delta = 0.2;
    } else if (model == "disc") {
      s.model = AgentModel::Disc;
    } else {
      throw ValidationError("study model must be 'point' or 'disc'");
    }
  }
  if (j.contains("d_s")) s.d_s = j["d_s"].get<double>();
  if (j.contains("dynamics")) s.dynamics = j["dynamics"].get<bool>();
  if (j.contains("delta_u")) s.delta_u = j["delta_u"].get<double>();
  if (j.contains("delta_td")) s.delta_td = j["delta_td"].get<double>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("v")) s.speed = j["v"].get<double>();
  if (j.contains("delta")) s.delta = j["delta"].get<double>();
  if (j.contains("dt")) s.dt = j["dt"].get<double>();
  if (j.contains("circle_margin")) s.circle_margin = j["circle_margin"].get<double>();
  if (j.contains("quadrotor")) s.quad = quad_from_json(j["quadrotor"]);
  return s;
}

std::string study_to_json(const StudySpec& spec) {
  json j;
  j["n"] = spec.n;
  j["R_c"] = spec.rc;
  j["trials"] = spec.trials;
  j["min_separation"] = spec.min_separation;
  j["model"] = spec.model == AgentModel::Point ? "point" : "disc";
  j["d_s"] = spec.d_s;
  j["dynamics"] = spec.dynamics;
  j["delta_u"] = spec.delta_u;
  j["delta_td"] = spec.delta_td;
  j["seed"] = spec.seed;
  j["v"] = spec.speed;
  j["delta"] = spec.delta;
  j["dt"] = spec.dt;
  j["circle_margin"] = spec.circle_margin;
  j["quadrotor"] = quad_to_json(spec.quad);
  return j.dump(2) + "\n";
}

StudySpec load_study(const std::string& path) { return parse_study_json(read_file(path)); }

std::string report_to_json(const StudyResult& result) {
  json j;
  j["scenario"] = {{"n", result.spec.n},
                   {"R_c", result.spec.rc},
                   {"trials", result.spec.trials},
                   {"model", result.spec.model == AgentModel::Point ? "point" : "disc"},
                   {"d_s", result.spec.d_s},
                   {"dynamics", result.spec.dynamics},
                   {"delta_u", result.spec.delta_u},
                   {"delta_td", result.spec.delta_td},
                   {"seed", result.spec.seed}};
  j["P_col"] = result.report.P_col;
  j["mu_col"] = result.report.mu_col;
  j["sigma_col"] = result.report.sigma_col;
  j["N_max_col"] = result.report.N_max_col;
  j["S_m_avg"] = result.report.S_m_avg;
  j["trials"] = result.report.trials;
  j["failed_trials"] = result.report.failed_trials;
  j["min_E"] = result.min_E;
  j["min_goal_gap"] = result.min_goal_gap;
  j["all_goals_in_search_space"] = result.all_goals_in_search_space;
  return j.dump(2) + "\n";
}

MonteCarloReport parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("report JSON malformed: ") + e.what());
  }
  MonteCarloReport r;
  r.P_col = j.at("P_col").get<double>();
  r.mu_col = j.at("mu_col").get<double>();
  r.sigma_col = j.at("sigma_col").get<double>();
  r.N_max_col = j.at("N_max_col").get<int>();
  r.S_m_avg = j.at("S_m_avg").get<double>();
  r.trials = j.at("trials").get<int>();
  r.failed_trials = j.at("failed_trials").get<int>();
  return r;
}

void save_report(const StudyResult& result, const std::string& path) {
  write_file(path, report_to_json(result));
}

std::string report_csv_row(const StudyResult& result, bool with_header) {
  std::ostringstream ss;
  ss << std::setprecision(17);
  if (with_header) {
    ss << "n,R_c,trials,model,d_s,dynamics,delta_u,delta_td,P_col,mu_col,sigma_col,"
          "N_max_col,S_m_avg_percent,failed_trials\n";
  }
  ss << result.spec.n << ',' << result.spec.rc << ',' << result.spec.trials << ','
     << (result.spec.model == AgentModel::Point ? "point" : "disc") << ',' << result.spec.d_s
     << ',' << (result.spec.dynamics ? 1 : 0) << ',' << result.spec.delta_u << ','
     << result.spec.delta_td << ',' << result.report.P_col << ',' << result.report.mu_col << ','
     << result.report.sigma_col << ',' << result.report.N_max_col << ','
     << result.report.S_m_avg * 100.0 << ',' << result.report.failed_trials << '\n';
  return ss.str();
}

void write_trajectory_csv(const TrajectoryLog& log, const std::vector<int>& ids,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << std::setprecision(17);
  out << "t,agent_id,x,y\n";
  for (std::size_t k = 0; k < log.positions.size(); ++k) {
    for (std::size_t i = 0; i < log.positions[k].size(); ++i) {
      out << log.times[k] << ',' << ids[i] << ',' << log.positions[k][i].x() << ','
          << log.positions[k][i].y() << '\n';
    }
  }
}

void write_etrace_csv(const TrajectoryLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << std::setprecision(17);
  out << "t,E\n";
  for (std::size_t k = 0; k < log.E_trace.size(); ++k) {
    out << log.times[k] << ',' << log.E_trace[k] << '\n';
  }
}

std::pair<std::vector<double>, std::vector<std::vector<Point2>>> read_trajectory_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> times;
  std::vector<std::vector<Point2>> frames;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double vals[4];
    for (double& v : vals) {
      if (!std::getline(ss, cell, ',')) throw ValidationError("trajectory CSV row too short");
      v = std::stod(cell);
    }
    if (times.empty() || vals[0] != times.back()) {
      times.push_back(vals[0]);
      frames.emplace_back();
    }
    frames.back().emplace_back(vals[2], vals[3]);
  }
  return {times, frames};
}

ScenarioFile generate_preset(const std::string& name, int n, double rc, double min_separation,
                             std::uint64_t seed) {
  ScenarioFile file;
  if (name == "hexagon_example2") {
    std::vector<Point2>& pts = file.scenario.initial_positions;
    for (const double side : {8.0, 6.0}) {
      std::vector<Point2> corners;
      for (int k = 0; k < 6; ++k) {
        const double a = k * kPi / 3.0;
        corners.emplace_back(side * std::cos(a), side * std::sin(a));
      }
      // 24 agents at equal perimeter spacing: each edge carries its starting
      // corner plus three interior points.
      for (int k = 0; k < 6; ++k) {
        const Point2& c0 = corners[k];
        const Point2& c1 = corners[(k + 1) % 6];
        for (int s = 0; s < 4; ++s) pts.push_back(c0 + (s / 4.0) * (c1 - c0));
      }
    }
    for (int k = 0; k < 6; ++k) pts.emplace_back(-2.9 + k * (5.8 / 5.0), 0.0);
    file.scenario.circle = {{0.0, 0.0}, 9.4};
    file.has_circle = true;
    file.scenario.speed = 0.5;
    file.scenario.delta = 0.2;
  } else if (name == "random_disc") {
    StudySpec spec;
    spec.n = n;
    spec.rc = rc;
    spec.trials = 1;
    spec.min_separation = min_separation;
    spec.model = AgentModel::Point;
    spec.d_s = 0.0;
    spec.delta = 0.2;
    spec.seed = seed;
    Scenario sc = sample_scenario(spec, 0);
    file.scenario = sc;
    file.has_circle = true;
    file.scenario.seed = seed;
  } else {
    throw ValidationError("unknown preset '" + name +
                          "' (expected hexagon_example2 or random_disc)");
  }
  file.ids.resize(file.scenario.initial_positions.size());
  for (std::size_t i = 0; i < file.ids.size(); ++i) file.ids[i] = static_cast<int>(i);
  return file;
}

}  // namespace circleform
