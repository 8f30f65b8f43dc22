#pragma once

#include <vector>

#include "fear/collision.hpp"
#include "fear/scenario.hpp"

namespace fear {

// Uniform polar partition of the action space [0, a_max] x [-pi, pi] into
// n_mag magnitude bands times n_dir direction sectors.
struct ActionPartition {
  double a_max;
  int n_mag;
  int n_dir;

  ActionPartition(double a_max_, int n_mag_, int n_dir_);

  double delta_mag() const { return a_max / n_mag; }
  double delta_dir() const;

  // Band endpoints; the outermost / last endpoints are exactly a_max and pi.
  double mag_edge(int m) const;   // m in 0..n_mag
  double dir_edge(int d) const;   // d in 0..n_dir
};

// One cell of the partition, 1-based on both axes: magnitudes in
// [(m-1)*delta_mag, m*delta_mag], directions in [-pi+(d-1)*delta_dir,
// -pi+d*delta_dir].
struct ActionSubset {
  int m_index;
  int d_index;
};

// Feasibility marks for every subset of one agent's action space.
// marks is m-major: index (m-1)*n_dir + (d-1).
struct FeasibilityGrid {
  size_t affected = 0;
  int n_mag = 0;
  int n_dir = 0;
  std::vector<char> marks;
  double hypervolume = 0.0;

  bool mark(int m, int d) const;
  size_t feasible_count() const;
};

// How the context trajectories for an affected agent are resolved.
// ghost_excluded (default): the affected agent is a ghost during resolution,
// so its factual action cannot touch the context at all. factual_resolution:
// everyone, the affected agent included, is resolved under the factual joint
// action (its collisions may freeze others); the affected agent's own hulls
// are still skipped when subsets are checked.
enum class ContextMode { ghost_excluded, factual_resolution };

// The subset's corner actions: (magnitude band endpoints) x (direction sector
// endpoints), ordered (lo,lo), (hi,lo), (lo,hi), (hi,hi). With
// arc_refinement a fifth action at (outer magnitude, mid direction) is
// appended; it bounds how far the outer arc of the sector bulges past the
// corner chord.
std::vector<Action> subset_corner_actions(const ActionPartition& partition,
                                          const ActionSubset& subset,
                                          bool arc_refinement);

// True iff the subset's per-interval hulls (hull over the corner-action
// trajectory hulls) clear every obstacle and every other agent's context hull
// on every interval. The context must have been resolved with ghost=affected,
// or with no ghost under ContextMode::factual_resolution.
bool subset_feasible(const Scenario& scenario, const ResolvedTrajectories& context,
                     size_t affected, const ActionSubset& subset);

// Resolves the context for `affected` and marks the whole partition.
// The affected agent's own entry in joint never influences the result under
// ghost_excluded; hypervolume is (feasible count) * delta_mag * delta_dir.
FeasibilityGrid feasible_hypervolume(const Scenario& scenario, const JointAction& joint,
                                     size_t affected,
                                     ContextMode mode = ContextMode::ghost_excluded);

}  // namespace fear
