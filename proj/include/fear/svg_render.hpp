#pragma once

#include <string>

#include "fear/planner.hpp"
#include "fear/scenario.hpp"

namespace fear {

// All renderers return a standalone SVG document. Output is deterministic:
// identical inputs give byte-identical text. World y points up in every view.

// Agents as boxes with velocity arrows, plus obstacles.
std::string render_scene(const Scenario& scenario, const JointAction& joint);

// Scene plus the collision-resolved per-interval trajectory hulls.
std::string render_trajectories(const Scenario& scenario, const JointAction& joint);

// Polar feasibility chart for one agent: one annular sector per action
// subset, filled by its feasible / infeasible mark.
std::string render_feasibility(const Scenario& scenario, const JointAction& joint,
                               size_t affected);

// Polar heatmap of the candidate grid for one ego agent: cells shaded by the
// aggregate score, colliding candidates crossed out, the selected action
// marked (absent when every candidate collides).
std::string render_plan(const Scenario& scenario, const JointAction& predicted,
                        const JointAction& mdr, size_t ego,
                        const AggregationPolicy& policy);

}  // namespace fear
