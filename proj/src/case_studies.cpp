#include "fear/case_studies.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fear/mdr.hpp"
#include "fear/svg_render.hpp"

namespace fear {
namespace {

namespace fs = std::filesystem;

using Kind = SignCheck::Kind;

const char* kind_label(Kind kind) {
  switch (kind) {
    case Kind::positive: return "> 0";
    case Kind::negative: return "< 0";
    case Kind::zero: return "= 0";
  }
  return "?";
}

bool kind_holds(Kind kind, double value) {
  switch (kind) {
    case Kind::positive: return value > kSignMagnitudeTol;
    case Kind::negative: return value < -kSignMagnitudeTol;
    case Kind::zero: return std::abs(value) <= kSignMagnitudeTol;
  }
  return false;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

const std::vector<CasePattern>& case_patterns() {
  static const std::vector<CasePattern> patterns = {
      {"a",
       "follower brakes while leader accelerates away; both courteous",
       {{1, 2, Kind::negative}, {2, 1, Kind::negative}},
       {}},
      {"b",
       "follower accelerates at escaping leader; assertive vs courteous",
       {{1, 2, Kind::positive}, {2, 1, Kind::negative}},
       {}},
      {"c",
       "follower accelerates while leader brakes lightly; both assertive",
       {{1, 2, Kind::positive}, {2, 1, Kind::positive}},
       {}},
      {"d",
       "boxed-in middle agent brakes into its follower",
       {{1, 2, Kind::positive},
        {3, 2, Kind::positive},
        {2, 1, Kind::positive},
        {2, 3, Kind::negative}},
       {{1, 2, 3, 2}}},
      {"e",
       "boxed-in middle agent advances gently, collision-free",
       {{1, 2, Kind::positive},
        {3, 2, Kind::positive},
        {2, 1, Kind::negative},
        {2, 3, Kind::positive}},
       {{1, 2, 3, 2}}},
      {"f",
       "boxed-in middle agent accelerates hard at the crossing corridor",
       {{1, 2, Kind::positive},
        {3, 2, Kind::positive},
        {2, 1, Kind::negative},
        {2, 3, Kind::positive}},
       {{1, 2, 3, 2}}},
      {"g",
       "case b inside a corridor of wall obstacles",
       {{1, 2, Kind::positive}, {2, 1, Kind::negative}},
       {}},
      {"h",
       "case e at a walled intersection",
       {{1, 2, Kind::positive},
        {3, 2, Kind::positive},
        {2, 1, Kind::negative},
        {2, 3, Kind::positive}},
       {}},
      {"i",
       "crosser slows down in front of the other agent",
       {{1, 2, Kind::positive}},
       {}},
      {"j",
       "crosser accelerates out of the other agent's way",
       {{1, 2, Kind::negative}},
       {}},
      {"k",
       "parallel near-miss, no path crossing; faster agent more assertive",
       {{1, 2, Kind::positive}, {2, 1, Kind::positive}},
       {{1, 2, 2, 1}}},
      {"l",
       "two agents converge on a trapped middle agent from both sides",
       {{1, 2, Kind::zero}, {3, 2, Kind::zero}, {2, 2, Kind::zero}},
       {}},
  };
  return patterns;
}

CaseStudyOutcome run_case_studies(const std::string& scenario_dir,
                                  const std::string& out_dir) {
  CaseStudyOutcome outcome;
  outcome.ok = true;
  fs::create_directories(out_dir);
  std::string& report = outcome.report;

  for (const CasePattern& pattern : case_patterns()) {
    const std::string file = scenario_dir + "/case_" + pattern.id + ".json";
    const LoadedScenario loaded = load_scenario_file(file);
    const JointAction mdr = compute_mdr(loaded.scenario, loaded.mdr);
    const FeARMatrix matrix = fear_matrix(loaded.scenario, loaded.joint, mdr);

    write_file(fs::path(out_dir) / ("case_" + pattern.id + ".csv"),
               export_matrix(matrix));
    write_file(fs::path(out_dir) / ("case_" + pattern.id + ".svg"),
               render_trajectories(loaded.scenario, loaded.joint));
    ++outcome.matrices_written;

    report += "case " + pattern.id + ": " + pattern.note + "\n";
    for (const SignCheck& check : pattern.checks) {
      const double value = matrix.value(check.actor - 1, check.affected - 1);
      const bool ok = kind_holds(check.kind, value);
      outcome.ok = outcome.ok && ok;
      report += "  F(" + std::to_string(check.actor) + "," +
                std::to_string(check.affected) + ") " + kind_label(check.kind) +
                ": got " + format_value(value) + (ok ? "  ok" : "  MISMATCH") + "\n";
    }
    for (const CasePattern::Ordering& order : pattern.orderings) {
      const double hi = matrix.value(order.actor_hi - 1, order.affected_hi - 1);
      const double lo = matrix.value(order.actor_lo - 1, order.affected_lo - 1);
      const bool ok = hi > lo;
      outcome.ok = outcome.ok && ok;
      report += "  F(" + std::to_string(order.actor_hi) + "," +
                std::to_string(order.affected_hi) + ") > F(" +
                std::to_string(order.actor_lo) + "," +
                std::to_string(order.affected_lo) + "): got " + format_value(hi) +
                " vs " + format_value(lo) + (ok ? "  ok" : "  MISMATCH") + "\n";
    }
  }

  // Head-on sensitivity grid: three baseline policies over one scene; every
  // policy's own action, judged under every policy as the baseline.
  const char* variants[3] = {"b", "c", "d"};
  LoadedScenario loaded[3] = {
      load_scenario_file(scenario_dir + "/headon_b.json"),
      load_scenario_file(scenario_dir + "/headon_c.json"),
      load_scenario_file(scenario_dir + "/headon_d.json"),
  };
  JointAction policy_action[3];
  for (int v = 0; v < 3; ++v) {
    policy_action[v] = compute_mdr(loaded[v].scenario, loaded[v].mdr);
    write_file(fs::path(out_dir) / (std::string("headon_") + variants[v] + "_traj.svg"),
               render_trajectories(loaded[v].scenario, policy_action[v]));
  }

  report += "head-on sensitivity grid:\n";
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      const FeARMatrix matrix =
          fear_matrix(loaded[row].scenario, policy_action[row], policy_action[col]);
      write_file(fs::path(out_dir) / (std::string("headon_") + variants[row] +
                                      variants[col] + ".csv"),
                 export_matrix(matrix));
      ++outcome.matrices_written;
      if (row == col) {
        // Joint action equals the baseline, so every off-diagonal entry must
        // vanish identically.
        double worst = 0.0;
        for (size_t i = 0; i < matrix.agent_count; ++i)
          for (size_t j = 0; j < matrix.agent_count; ++j)
            if (i != j) worst = std::max(worst, std::abs(matrix.value(i, j)));
        const bool ok = worst <= 1e-12;
        outcome.ok = outcome.ok && ok;
        report += std::string("  A_") + variants[row] + " under baseline " +
                  variants[col] + ": max |off-diagonal| = " + format_value(worst) +
                  (ok ? "  ok" : "  MISMATCH") + "\n";
      }
    }
  }

  report += outcome.ok ? "all sign patterns reproduced\n" : "sign pattern mismatches found\n";
  write_file(fs::path(out_dir) / "signs_report.txt", report);
  return outcome;
}

}  // namespace fear
