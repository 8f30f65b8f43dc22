#pragma once

#include <vector>

#include "fear/geometry.hpp"
#include "fear/kinematics.hpp"

namespace fear {

// One action per agent, indexed like Scenario::agents.
struct JointAction {
  std::vector<Action> actions;
};

// Static description of an interaction: agents, obstacles, the time grid and
// the action-space discretisation shared by every computation on the scene.
struct Scenario {
  std::vector<AgentInit> agents;
  std::vector<ConvexPolygon> obstacles;
  TimeGrid grid{1.0, 1};
  double a_max = 1.0;     // acceleration magnitude bound, > 0
  int n_mag = 16;         // magnitude bands in the action partition, >= 1
  int n_dir = 32;         // direction sectors, >= 2
  double epsilon = 1e-6;  // ratio regulariser, > 0
  bool arc_refinement = false;

  size_t agent_count() const { return agents.size(); }
};

// Default for Scenario::arc_refinement: the extra mid-direction sample only
// pays off while a direction sector is wide enough for the arc between corner
// accelerations to bulge past their chord.
bool default_arc_refinement(int n_dir);

// Throws std::invalid_argument when a scenario field is out of contract.
void validate_scenario(const Scenario& scenario);

// Throws std::invalid_argument unless joint has one action per agent and every
// magnitude is within [0, a_max].
void validate_joint(const Scenario& scenario, const JointAction& joint);

}  // namespace fear
