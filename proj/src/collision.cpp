#include "fear/collision.hpp"

#include <stdexcept>

namespace fear {

ResolvedTrajectories resolve_trajectories(const Scenario& scenario,
                                          const JointAction& joint,
                                          std::optional<size_t> ghost) {
  validate_scenario(scenario);
  validate_joint(scenario, joint);
  const size_t k = scenario.agent_count();
  if (ghost && *ghost >= k)
    throw std::invalid_argument("resolve_trajectories: ghost index out of range");

  const double dt = scenario.grid.dt();
  const int n_t = scenario.grid.intervals();

  std::vector<Vec2> pos(k), vel(k), accel(k);
  std::vector<bool> frozen(k, false);
  for (size_t i = 0; i < k; ++i) {
    pos[i] = scenario.agents[i].position;
    vel[i] = scenario.agents[i].velocity;
    accel[i] = joint.actions[i].accel();
  }

  ResolvedTrajectories out;
  out.ghost = ghost;
  out.poses.assign(k, {});
  out.collided.assign(k, false);
  out.freeze_interval.assign(k, std::nullopt);
  out.interval_hulls.assign(k, {});
  for (size_t i = 0; i < k; ++i) {
    out.poses[i].reserve(n_t + 1);
    out.poses[i].push_back(pos[i]);
    out.interval_hulls[i].reserve(n_t);
  }

  std::vector<ConvexPolygon> hulls;
  std::vector<Vec2> end_pos(k);
  std::vector<bool> hit(k);

  for (int t = 1; t <= n_t; ++t) {
    // Snapshot hulls from the states at boundary t-1.
    hulls.clear();
    for (size_t i = 0; i < k; ++i) {
      if (frozen[i]) {
        end_pos[i] = pos[i];
        hulls.push_back(bounding_box(pos[i], scenario.agents[i].box_side));
      } else {
        end_pos[i] = pos[i] + vel[i] * dt + accel[i] * (0.5 * dt * dt);
        hulls.push_back(trajectory_hull(pos[i], end_pos[i], scenario.agents[i].box_side));
      }
    }

    // Detect against the snapshot; freezes apply only after the full sweep,
    // so detection order cannot matter.
    for (size_t i = 0; i < k; ++i) {
      hit[i] = false;
      if (frozen[i] || (ghost && *ghost == i)) continue;
      for (const ConvexPolygon& obstacle : scenario.obstacles) {
        if (polygons_intersect(hulls[i], obstacle)) {
          hit[i] = true;
          break;
        }
      }
      for (size_t j = 0; !hit[i] && j < k; ++j) {
        if (j == i || (ghost && *ghost == j)) continue;
        if (polygons_intersect(hulls[i], hulls[j])) hit[i] = true;
      }
    }

    for (size_t i = 0; i < k; ++i) {
      if (hit[i]) {
        frozen[i] = true;
        out.collided[i] = true;
        out.freeze_interval[i] = t;
        // Reverts to the boundary t-1 pose: pos[i] is left untouched. The
        // hull that detected the collision is kept as this interval's hull.
      } else if (!frozen[i]) {
        pos[i] = end_pos[i];
        vel[i] += accel[i] * dt;
      }
      out.poses[i].push_back(pos[i]);
      out.interval_hulls[i].push_back(std::move(hulls[i]));
    }
  }
  return out;
}

bool agent_collides(const Scenario& scenario, const JointAction& joint, size_t agent) {
  if (agent >= scenario.agent_count())
    throw std::invalid_argument("agent_collides: agent index out of range");
  return resolve_trajectories(scenario, joint).collided[agent];
}

}  // namespace fear
