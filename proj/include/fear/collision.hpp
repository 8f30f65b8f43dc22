#pragma once

#include <optional>
#include <vector>

#include "fear/scenario.hpp"

namespace fear {

// Realized trajectories after sequential collision resolution. Agents that
// collide freeze at their last collision-free boundary and stay there as
// static boxes for the rest of the horizon.
struct ResolvedTrajectories {
  // poses[i] holds agent i's positions at boundaries 0..N_t (N_t+1 entries).
  std::vector<std::vector<Vec2>> poses;
  // collided[i] is true iff freeze_interval[i] is set.
  std::vector<bool> collided;
  // 1-based interval in which the agent froze.
  std::vector<std::optional<int>> freeze_interval;
  // interval_hulls[i][t-1] is the hull checked for interval t: the swept hull
  // while the agent moves (including the interval it collides in), its static
  // box afterwards.
  std::vector<std::vector<ConvexPolygon>> interval_hulls;
  // Agent excluded from every collision check, when one was requested.
  std::optional<size_t> ghost;
};

// Steps intervals 1..N_t. Per interval every active agent sweeps one segment
// of its constant-acceleration trajectory; hulls are built from the states at
// the interval start, collisions (agent-agent and agent-obstacle, boundary
// contact included) are detected against that snapshot, and all agents found
// colliding freeze simultaneously at the previous boundary.
//
// A ghost agent, when given, takes part in nothing: it cannot collide, nobody
// collides with it, and its output entries are its undisturbed nominal
// trajectory. This is how feasibility contexts exclude the affected agent.
ResolvedTrajectories resolve_trajectories(const Scenario& scenario,
                                          const JointAction& joint,
                                          std::optional<size_t> ghost = std::nullopt);

// Collision flag of one agent under full resolution (no ghost).
bool agent_collides(const Scenario& scenario, const JointAction& joint, size_t agent);

}  // namespace fear
