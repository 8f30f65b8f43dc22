#include "fear/feasibility.hpp"

#include <numbers>
#include <stdexcept>

#include "fear/parallel.hpp"

namespace fear {
namespace {

void check_subset_indices(const ActionPartition& partition, const ActionSubset& subset) {
  if (subset.m_index < 1 || subset.m_index > partition.n_mag ||
      subset.d_index < 1 || subset.d_index > partition.n_dir)
    throw std::invalid_argument("action subset index out of range");
}

void append_box_corners(std::vector<Vec2>& out, const Vec2& center, double half) {
  out.emplace_back(center.x - half, center.y - half);
  out.emplace_back(center.x + half, center.y - half);
  out.emplace_back(center.x + half, center.y + half);
  out.emplace_back(center.x - half, center.y + half);
}

}  // namespace

ActionPartition::ActionPartition(double a_max_, int n_mag_, int n_dir_)
    : a_max(a_max_), n_mag(n_mag_), n_dir(n_dir_) {
  if (!(a_max > 0.0)) throw std::invalid_argument("ActionPartition: a_max must be > 0");
  if (n_mag < 1) throw std::invalid_argument("ActionPartition: n_mag must be >= 1");
  if (n_dir < 2) throw std::invalid_argument("ActionPartition: n_dir must be >= 2");
}

double ActionPartition::delta_dir() const { return 2.0 * std::numbers::pi / n_dir; }

double ActionPartition::mag_edge(int m) const {
  if (m < 0 || m > n_mag) throw std::invalid_argument("ActionPartition: bad magnitude edge");
  return m == n_mag ? a_max : m * delta_mag();
}

double ActionPartition::dir_edge(int d) const {
  if (d < 0 || d > n_dir) throw std::invalid_argument("ActionPartition: bad direction edge");
  if (d == 0) return -std::numbers::pi;
  if (d == n_dir) return std::numbers::pi;
  return -std::numbers::pi + d * delta_dir();
}

bool FeasibilityGrid::mark(int m, int d) const {
  if (m < 1 || m > n_mag || d < 1 || d > n_dir)
    throw std::invalid_argument("FeasibilityGrid: subset index out of range");
  return marks[static_cast<size_t>(m - 1) * n_dir + (d - 1)] != 0;
}

size_t FeasibilityGrid::feasible_count() const {
  size_t count = 0;
  for (char c : marks) count += c != 0;
  return count;
}

std::vector<Action> subset_corner_actions(const ActionPartition& partition,
                                          const ActionSubset& subset,
                                          bool arc_refinement) {
  check_subset_indices(partition, subset);
  const double mag_lo = partition.mag_edge(subset.m_index - 1);
  const double mag_hi = partition.mag_edge(subset.m_index);
  const double dir_lo = partition.dir_edge(subset.d_index - 1);
  const double dir_hi = partition.dir_edge(subset.d_index);

  std::vector<Action> corners;
  corners.reserve(arc_refinement ? 5 : 4);
  corners.emplace_back(mag_lo, dir_lo);
  corners.emplace_back(mag_hi, dir_lo);
  corners.emplace_back(mag_lo, dir_hi);
  corners.emplace_back(mag_hi, dir_hi);
  if (arc_refinement) corners.emplace_back(mag_hi, 0.5 * (dir_lo + dir_hi));
  return corners;
}

bool subset_feasible(const Scenario& scenario, const ResolvedTrajectories& context,
                     size_t affected, const ActionSubset& subset) {
  const size_t k = scenario.agent_count();
  if (affected >= k) throw std::invalid_argument("subset_feasible: agent index out of range");
  if (context.poses.size() != k)
    throw std::invalid_argument("subset_feasible: context does not match scenario");
  if (context.ghost) {
    if (*context.ghost != affected)
      throw std::invalid_argument("subset_feasible: context resolved for a different ghost");
  }
  // A ghost-free context is accepted for ContextMode::factual_resolution; the
  // affected agent's own hulls are skipped below either way.

  const ActionPartition partition(scenario.a_max, scenario.n_mag, scenario.n_dir);
  const std::vector<Action> corners =
      subset_corner_actions(partition, subset, scenario.arc_refinement);

  const AgentInit& agent = scenario.agents[affected];
  const double half = agent.box_side / 2.0;
  const int n_t = scenario.grid.intervals();

  std::vector<std::vector<Vec2>> corner_paths;
  corner_paths.reserve(corners.size());
  for (const Action& action : corners)
    corner_paths.push_back(nominal_trajectory(agent, action, scenario.grid));

  std::vector<Vec2> cloud;
  cloud.reserve(corners.size() * 8);
  for (int t = 0; t < n_t; ++t) {
    cloud.clear();
    for (const auto& path : corner_paths) {
      append_box_corners(cloud, path[t], half);
      append_box_corners(cloud, path[t + 1], half);
    }
    const ConvexPolygon subset_hull = convex_hull(cloud);

    for (const ConvexPolygon& obstacle : scenario.obstacles)
      if (polygons_intersect(subset_hull, obstacle)) return false;
    for (size_t p = 0; p < k; ++p) {
      if (p == affected) continue;
      if (polygons_intersect(subset_hull, context.interval_hulls[p][t])) return false;
    }
  }
  return true;
}

FeasibilityGrid feasible_hypervolume(const Scenario& scenario, const JointAction& joint,
                                     size_t affected, ContextMode mode) {
  validate_scenario(scenario);
  validate_joint(scenario, joint);
  if (affected >= scenario.agent_count())
    throw std::invalid_argument("feasible_hypervolume: agent index out of range");

  const ResolvedTrajectories context = resolve_trajectories(
      scenario, joint,
      mode == ContextMode::ghost_excluded ? std::optional<size_t>(affected)
                                          : std::nullopt);

  FeasibilityGrid grid;
  grid.affected = affected;
  grid.n_mag = scenario.n_mag;
  grid.n_dir = scenario.n_dir;
  grid.marks.assign(static_cast<size_t>(scenario.n_mag) * scenario.n_dir, 0);

  parallel_for(grid.marks.size(), [&](size_t idx) {
    const ActionSubset subset{static_cast<int>(idx) / scenario.n_dir + 1,
                              static_cast<int>(idx) % scenario.n_dir + 1};
    grid.marks[idx] = subset_feasible(scenario, context, affected, subset) ? 1 : 0;
  });

  const ActionPartition partition(scenario.a_max, scenario.n_mag, scenario.n_dir);
  grid.hypervolume =
      static_cast<double>(grid.feasible_count()) * partition.delta_mag() * partition.delta_dir();
  return grid;
}

}  // namespace fear
