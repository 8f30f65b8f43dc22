#include "fear/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fear {

Action::Action(double magnitude_, double direction_)
    : magnitude(magnitude_), direction(direction_) {
  if (!std::isfinite(magnitude) || magnitude < 0.0)
    throw std::invalid_argument("Action: magnitude must be finite and >= 0");
  if (!std::isfinite(direction) || direction < -std::numbers::pi ||
      direction > std::numbers::pi)
    throw std::invalid_argument("Action: direction must be in [-pi, pi]");
}

Vec2 Action::accel() const {
  return {magnitude * std::cos(direction), magnitude * std::sin(direction)};
}

AgentInit::AgentInit(const Vec2& position_, const Vec2& velocity_, double box_side_)
    : position(position_), velocity(velocity_), box_side(box_side_) {
  if (!std::isfinite(box_side) || box_side <= 0.0)
    throw std::invalid_argument("AgentInit: box_side must be finite and > 0");
}

TimeGrid::TimeGrid(double horizon, int intervals)
    : horizon_(horizon), intervals_(intervals) {
  if (!std::isfinite(horizon_) || horizon_ <= 0.0)
    throw std::invalid_argument("TimeGrid: horizon must be finite and > 0");
  if (intervals_ < 1) throw std::invalid_argument("TimeGrid: intervals must be >= 1");
}

double TimeGrid::boundary_time(int i) const {
  if (i < 0 || i > intervals_)
    throw std::invalid_argument("TimeGrid: boundary index out of range");
  return horizon_ * (static_cast<double>(i) / intervals_);
}

Vec2 nominal_position(const AgentInit& init, const Action& action, double t,
                      const TimeGrid& grid) {
  if (!std::isfinite(t) || t < 0.0 || t > grid.horizon())
    throw std::invalid_argument("nominal_position: t outside [0, horizon]");
  const Vec2 a = action.accel();
  return init.position + init.velocity * t + a * (0.5 * t * t);
}

std::vector<Vec2> nominal_trajectory(const AgentInit& init, const Action& action,
                                     const TimeGrid& grid) {
  std::vector<Vec2> out;
  out.reserve(grid.intervals() + 1);
  for (int i = 0; i <= grid.intervals(); ++i)
    out.push_back(nominal_position(init, action, grid.boundary_time(i), grid));
  return out;
}

ConvexPolygon trajectory_hull(const Vec2& start, const Vec2& end, double box_side) {
  if (!(box_side > 0.0))
    throw std::invalid_argument("trajectory_hull: box_side must be > 0");
  const double h = box_side / 2.0;
  const Vec2 corners[8] = {
      {start.x - h, start.y - h}, {start.x + h, start.y - h},
      {start.x + h, start.y + h}, {start.x - h, start.y + h},
      {end.x - h, end.y - h},     {end.x + h, end.y - h},
      {end.x + h, end.y + h},     {end.x - h, end.y + h}};
  return convex_hull(corners);
}

}  // namespace fear
