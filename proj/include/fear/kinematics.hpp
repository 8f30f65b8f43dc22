#pragma once

#include <vector>

#include "fear/geometry.hpp"

namespace fear {

// Polar acceleration held constant over the whole horizon. Direction is in
// radians, kept in [-pi, pi]; both end values are accepted.
struct Action {
  double magnitude = 0.0;
  double direction = 0.0;

  Action() = default;
  Action(double magnitude_, double direction_);

  Vec2 accel() const;
};

// Initial state of one agent. Agents are axis-aligned square rigid bodies of
// side box_side centred on position.
struct AgentInit {
  Vec2 position;
  Vec2 velocity;
  double box_side = 1.0;

  AgentInit() = default;
  AgentInit(const Vec2& position_, const Vec2& velocity_, double box_side_);
};

// Uniform partition of the horizon [0, T] into N_t intervals.
class TimeGrid {
 public:
  TimeGrid(double horizon, int intervals);

  double horizon() const { return horizon_; }
  int intervals() const { return intervals_; }
  double dt() const { return horizon_ / intervals_; }

  // Boundary times t_0 = 0 .. t_{N_t} = T, exact at both ends.
  double boundary_time(int i) const;

 private:
  double horizon_;
  int intervals_;
};

// Closed-form position under constant acceleration at time t.
// Throws std::invalid_argument unless 0 <= t <= grid.horizon().
Vec2 nominal_position(const AgentInit& init, const Action& action, double t,
                      const TimeGrid& grid);

// Positions at every grid boundary; size is grid.intervals() + 1.
std::vector<Vec2> nominal_trajectory(const AgentInit& init, const Action& action,
                                     const TimeGrid& grid);

// Convex hull of the agent's bounding boxes at the start and end of one
// interval: eight box corners. Stands in for the area swept across the
// interval; the parabolic deviation from the straight chord is second order
// in the interval length.
ConvexPolygon trajectory_hull(const Vec2& start, const Vec2& end, double box_side);

}  // namespace fear
