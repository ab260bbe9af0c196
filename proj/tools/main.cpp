#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "circleform/geometry.hpp"
#include "circleform/io.hpp"
#include "circleform/montecarlo.hpp"

namespace {

using namespace circleform;

int default_jobs() {
  if (const char* env = std::getenv("CIRCLEFORM_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

void apply_seed_override(ScenarioFile& file, const std::optional<std::uint64_t>& seed) {
  if (seed) file.scenario.seed = *seed;
}

int cmd_generate(const std::string& preset, int n, double rc, double min_sep,
                 std::optional<std::uint64_t> seed, const std::string& out) {
  ScenarioFile file = generate_preset(preset, n, rc, min_sep, seed.value_or(0));
  apply_seed_override(file, seed);
  const std::string text = scenario_to_json(file);
  if (out.empty()) {
    std::cout << text;
  } else {
    save_scenario_file(file, out);
    std::cerr << "wrote " << file.ids.size() << " agents to " << out << "\n";
  }
  return 0;
}

int cmd_assign(const std::string& scenario_path, std::optional<std::uint64_t> seed,
               const std::string& out) {
  ScenarioFile file = load_scenario_file(scenario_path);
  apply_seed_override(file, seed);
  const ConvexLayerSet layers = convex_layers(file.scenario.initial_positions);
  const GoalAssignment assignment =
      assign_all(file.scenario.initial_positions, file.scenario.circle, layers,
                 file.scenario.speed, file.scenario.delta);

  double max_tf = 0.0;
  int modified = 0;
  for (const AgentGoal& g : assignment.agents) {
    max_tf = std::max(max_tf, g.t_f);
    modified += g.was_modified ? 1 : 0;
  }
  std::cerr << "agents: " << assignment.agents.size() << "  layers: " << layers.layer_count()
            << "  modified goals: " << modified << "  max t_f: " << max_tf << " s\n";

  const std::string text = goals_to_json(assignment, file, layers);
  if (out.empty()) {
    std::cout << text;
  } else {
    save_goals(assignment, file, layers, out);
  }
  return 0;
}

int cmd_simulate(const std::string& scenario_path, bool dynamics,
                 std::optional<std::uint64_t> seed, const std::string& traj_path,
                 const std::string& etrace_path, const std::string& goals_path) {
  ScenarioFile file = load_scenario_file(scenario_path);
  apply_seed_override(file, seed);
  if (dynamics) file.scenario.dynamics = true;

  const ConvexLayerSet layers = convex_layers(file.scenario.initial_positions);
  const GoalAssignment assignment =
      assign_all(file.scenario.initial_positions, file.scenario.circle, layers,
                 file.scenario.speed, file.scenario.delta);

  RngStream delay_rng = make_stream(file.scenario.seed, 0, StreamPurpose::Delays);
  const std::vector<double> delays = sample_delays(
      static_cast<int>(file.ids.size()), file.scenario.delta_td, delay_rng);

  SimOptions options;
  options.record_trace = !traj_path.empty() || !etrace_path.empty();
  const TrajectoryLog log = simulate(file.scenario, assignment, delays, options);

  if (!goals_path.empty()) save_goals(assignment, file, layers, goals_path);
  if (!traj_path.empty()) write_trajectory_csv(log, file.ids, traj_path);
  if (!etrace_path.empty()) write_etrace_csv(log, etrace_path);

  std::cout << "agents: " << file.ids.size() << "\n"
            << "layers: " << layers.layer_count() << "\n"
            << "min_E: " << log.min_E << " m\n"
            << "conflicts: " << log.conflict_count() << "\n";
  if (log.unstable) std::cout << "warning: dynamics left the stable envelope\n";
  return 0;
}

int cmd_montecarlo(const std::string& spec_path, std::optional<std::uint64_t> seed,
                   const std::string& out, const std::string& csv, int jobs) {
  StudySpec spec = load_study(spec_path);
  if (seed) spec.seed = *seed;

  int last_decile = -1;
  auto progress = [&](int done, int total) {
    const int decile = 10 * done / total;
    if (decile != last_decile) {
      last_decile = decile;
      std::cerr << "trials: " << done << "/" << total << "\n";
    }
  };
  const StudyResult result = run_study(spec, jobs, progress);

  const std::string text = report_to_json(result);
  if (out.empty()) {
    std::cout << text;
  } else {
    save_report(result, out);
  }
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw ValidationError("cannot write file: " + csv);
    f << report_csv_row(result, true);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-shot conflict-free goal assignment on an enclosing circle"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "override the seed from the input file")->expected(1);

  auto* gen = app.add_subcommand("generate", "emit a scenario file from a preset");
  std::string preset, gen_out;
  int gen_n = 20;
  double gen_rc = 4.0, gen_min_sep = 0.01;
  gen->add_option("--preset", preset, "hexagon_example2 or random_disc")->required();
  gen->add_option("--n", gen_n, "agent count (random_disc)");
  gen->add_option("--radius", gen_rc, "sampling-disc radius in m (random_disc)");
  gen->add_option("--min-sep", gen_min_sep, "minimum pairwise separation in m (random_disc)");
  gen->add_option("-o,--output", gen_out, "output path (stdout when omitted)");

  auto* assign = app.add_subcommand("assign", "compute goal assignment for a scenario");
  std::string assign_scenario, assign_out;
  assign->add_option("scenario", assign_scenario, "scenario JSON path")->required();
  assign->add_option("-o,--output", assign_out, "goals JSON path (stdout when omitted)");

  auto* sim = app.add_subcommand("simulate", "assign goals and simulate the motion");
  std::string sim_scenario, traj_out, etrace_out, goals_out;
  bool sim_dynamics = false;
  sim->add_option("scenario", sim_scenario, "scenario JSON path")->required();
  sim->add_flag("--dynamics", sim_dynamics, "track goals with the quadrotor backend");
  sim->add_option("--traj", traj_out, "trajectory CSV output path");
  sim->add_option("--etrace", etrace_out, "minimum-distance trace CSV output path");
  sim->add_option("--goals", goals_out, "goals JSON output path");

  auto* mc = app.add_subcommand("montecarlo", "run a Monte Carlo study");
  std::string mc_spec, mc_out, mc_csv;
  int jobs = default_jobs();
  mc->add_option("--spec", mc_spec, "study spec JSON path")->required();
  mc->add_option("-o,--output", mc_out, "report JSON path (stdout when omitted)");
  mc->add_option("--csv", mc_csv, "summary CSV row output path");
  mc->add_option("--jobs", jobs, "parallel trial workers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(preset, gen_n, gen_rc, gen_min_sep, seed, gen_out);
    if (assign->parsed()) return cmd_assign(assign_scenario, seed, assign_out);
    if (sim->parsed()) {
      return cmd_simulate(sim_scenario, sim_dynamics, seed, traj_out, etrace_out, goals_out);
    }
    if (mc->parsed()) return cmd_montecarlo(mc_spec, seed, mc_out, mc_csv, jobs);
  } catch (const circleform::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
