#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fear/case_studies.hpp"
#include "fear/collision.hpp"
#include "fear/fear_metric.hpp"
#include "fear/mdr.hpp"
#include "fear/planner.hpp"
#include "fear/scenario_io.hpp"
#include "fear/svg_render.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << content;
}

// Empty override keeps the document's policy.
void apply_mdr_override(fear::LoadedScenario& loaded, const std::string& override_name) {
  if (override_name.empty()) return;
  if (override_name == "zero") {
    loaded.mdr.kind = fear::MdrPolicyKind::zero;
    return;
  }
  if (override_name == "social-force") {
    if (!loaded.mdr.social_force)
      throw fear::ScenarioError(
          "--mdr social-force: scenario document carries no social_force configuration");
    loaded.mdr.kind = fear::MdrPolicyKind::social_force;
    return;
  }
  throw fear::ScenarioError("--mdr must be 'zero' or 'social-force'");
}

fear::AggregateKind parse_aggregate(const std::string& name) {
  if (name == "mean") return fear::AggregateKind::mean;
  if (name == "min") return fear::AggregateKind::min;
  if (name == "max") return fear::AggregateKind::max;
  if (name == "count") return fear::AggregateKind::count_net;
  throw fear::ScenarioError("aggregate must be one of mean, min, max, count");
}

std::string format_action(const fear::Action& action) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "a=%.6f theta=%.6f", action.magnitude, action.direction);
  return buf;
}

size_t checked_ego_index(const fear::LoadedScenario& loaded, int ego_id) {
  if (ego_id < 1 || static_cast<size_t>(ego_id) > loaded.scenario.agent_count())
    throw fear::ScenarioError("agent id " + std::to_string(ego_id) +
                              " is not in the scenario");
  return static_cast<size_t>(ego_id - 1);
}

int run_compute(const std::string& path, const std::string& out,
                const std::string& mdr_override, bool audit) {
  fear::LoadedScenario loaded = fear::load_scenario_file(path);
  apply_mdr_override(loaded, mdr_override);
  const fear::JointAction mdr = fear::compute_mdr(loaded.scenario, loaded.mdr);
  const fear::FeARMatrix matrix = fear::fear_matrix(loaded.scenario, loaded.joint, mdr);
  write_output(out, fear::export_matrix(matrix, audit));
  return kExitOk;
}

int run_plan(const std::string& path, int ego_id, const std::string& aggregate,
             const std::string& out, const std::string& mdr_override, int grid_mag,
             int grid_dir) {
  fear::LoadedScenario loaded = fear::load_scenario_file(path);
  apply_mdr_override(loaded, mdr_override);
  const size_t ego = checked_ego_index(loaded, ego_id);
  const fear::JointAction mdr = fear::compute_mdr(loaded.scenario, loaded.mdr);

  const int n_mag = grid_mag > 0 ? grid_mag : loaded.scenario.n_mag;
  const int n_dir = grid_dir > 0 ? grid_dir : loaded.scenario.n_dir;
  const std::vector<fear::Action> grid =
      fear::candidate_grid(loaded.scenario.a_max, n_mag, n_dir);
  const std::vector<fear::CandidateEvaluation> evals =
      fear::evaluate_candidates(loaded.scenario, loaded.joint, mdr, ego, grid);

  fear::AggregationPolicy policy;
  policy.kind = parse_aggregate(aggregate);
  const fear::SelectionResult selection = fear::select_action(evals, policy);

  const std::string csv = fear::export_evaluations(evals, loaded.scenario.agent_count());
  const std::string line = "selected candidate " +
                           std::to_string(selection.selected_index + 1) + " of " +
                           std::to_string(evals.size()) + ": " +
                           format_action(selection.selected) + "\n";
  if (out.empty()) {
    std::cout << csv;
    std::cerr << line;
  } else {
    write_output(out, csv);
    std::cout << line;
  }
  return kExitOk;
}

int run_render(const std::string& path, const std::string& what, const std::string& out,
               const std::string& mdr_override) {
  fear::LoadedScenario loaded = fear::load_scenario_file(path);
  apply_mdr_override(loaded, mdr_override);

  std::string svg;
  if (what == "scene") {
    svg = fear::render_scene(loaded.scenario, loaded.joint);
  } else if (what == "trajectories") {
    svg = fear::render_trajectories(loaded.scenario, loaded.joint);
  } else if (what.rfind("feasibility:", 0) == 0) {
    const size_t agent = checked_ego_index(loaded, std::atoi(what.c_str() + 12));
    svg = fear::render_feasibility(loaded.scenario, loaded.joint, agent);
  } else if (what.rfind("plan:", 0) == 0) {
    const std::string rest = what.substr(5);
    const size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw fear::ScenarioError("render plan target must be plan:<agent>:<aggregate>");
    const size_t ego = checked_ego_index(loaded, std::atoi(rest.substr(0, colon).c_str()));
    fear::AggregationPolicy policy;
    policy.kind = parse_aggregate(rest.substr(colon + 1));
    const fear::JointAction mdr = fear::compute_mdr(loaded.scenario, loaded.mdr);
    svg = fear::render_plan(loaded.scenario, loaded.joint, mdr, ego, policy);
  } else {
    throw fear::ScenarioError(
        "render target must be scene, trajectories, feasibility:<agent> or "
        "plan:<agent>:<aggregate>");
  }
  write_output(out, svg);
  return kExitOk;
}

int run_mdr(const std::string& path, const std::string& out,
            const std::string& mdr_override) {
  fear::LoadedScenario loaded = fear::load_scenario_file(path);
  apply_mdr_override(loaded, mdr_override);
  const fear::JointAction mdr = fear::compute_mdr(loaded.scenario, loaded.mdr);
  std::string csv = "agent,a,theta\n";
  for (size_t i = 0; i < mdr.actions.size(); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f\n", i + 1, mdr.actions[i].magnitude,
                  mdr.actions[i].direction);
    csv += buf;
  }
  write_output(out, csv);
  return kExitOk;
}

int run_casestudies(const std::string& scenario_dir, const std::string& out_dir) {
  const fear::CaseStudyOutcome outcome = fear::run_case_studies(scenario_dir, out_dir);
  std::cout << outcome.report;
  return outcome.ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasible action-space reduction analysis for 2D multi-agent scenes"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, mdr_override, what, aggregate = "mean";
  std::string scenario_dir = "scenarios", out_dir = "casestudies_out";
  int ego_id = 1, grid_mag = 0, grid_dir = 0;
  bool audit = false;

  CLI::App* compute = app.add_subcommand("compute", "Write the FeAR matrix as CSV");
  compute->add_option("scenario", scenario_path, "scenario JSON file")->required();
  compute->add_option("-o,--out", out_path, "output file (default: stdout)");
  compute->add_flag("--audit", audit, "append raw ratios and hypervolume terms");
  compute->add_option("--mdr", mdr_override, "override baseline policy: zero|social-force");

  CLI::App* plan = app.add_subcommand("plan", "Score candidate actions for an ego agent");
  plan->add_option("scenario", scenario_path, "scenario JSON file")->required();
  plan->add_option("--ego", ego_id, "ego agent id (1-based)")->required();
  plan->add_option("--aggregate", aggregate, "mean|min|max|count (default mean)");
  plan->add_option("-o,--out", out_path, "evaluation CSV file (default: stdout)");
  plan->add_option("--mdr", mdr_override, "override baseline policy: zero|social-force");
  plan->add_option("--grid-mag", grid_mag, "candidate grid magnitude count (default N_m)");
  plan->add_option("--grid-dir", grid_dir, "candidate grid direction count (default N_d)");

  CLI::App* render = app.add_subcommand("render", "Write an SVG view of the scenario");
  render->add_option("scenario", scenario_path, "scenario JSON file")->required();
  render->add_option("--what", what,
                     "scene | trajectories | feasibility:<agent> | plan:<agent>:<aggregate>")
      ->required();
  render->add_option("-o,--out", out_path, "output SVG file (default: stdout)");
  render->add_option("--mdr", mdr_override, "override baseline policy: zero|social-force");

  CLI::App* cases = app.add_subcommand("casestudies", "Run the bundled case studies");
  cases->add_option("--scenarios", scenario_dir, "directory with the bundled scenarios");
  cases->add_option("--out-dir", out_dir, "directory for matrices, renders and the report");

  CLI::App* mdr_cmd = app.add_subcommand("mdr", "Print the baseline action per agent");
  mdr_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
  mdr_cmd->add_option("-o,--out", out_path, "output file (default: stdout)");
  mdr_cmd->add_option("--mdr", mdr_override, "override baseline policy: zero|social-force");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed()) return run_compute(scenario_path, out_path, mdr_override, audit);
    if (plan->parsed())
      return run_plan(scenario_path, ego_id, aggregate, out_path, mdr_override, grid_mag,
                      grid_dir);
    if (render->parsed()) return run_render(scenario_path, what, out_path, mdr_override);
    if (cases->parsed()) return run_casestudies(scenario_dir, out_dir);
    if (mdr_cmd->parsed()) return run_mdr(scenario_path, out_path, mdr_override);
  } catch (const fear::NoFeasibleCandidateError& e) {
    std::cerr << "error: " << e.what() << " (best colliding candidate: "
              << format_action(e.best_colliding) << ")\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
