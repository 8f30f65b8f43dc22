#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fear/mdr.hpp"

using fear::Action;
using fear::AgentInit;
using fear::JointAction;
using fear::LaneSpec;
using fear::Scenario;
using fear::SocialForceConfig;
using fear::social_force_acceleration;
using fear::social_force_mdr;
using fear::TimeGrid;
using fear::Vec2;
using fear::vector_to_mag_angle;

namespace {

Scenario base_scenario(std::vector<AgentInit> agents, double a_max = 2.0) {
  Scenario s;
  s.grid = TimeGrid(2.0, 8);
  s.a_max = a_max;
  s.agents = std::move(agents);
  return s;
}

SocialForceConfig config_for(size_t k) {
  SocialForceConfig c;
  c.desired_velocity.assign(k, Vec2{});
  return c;
}

}  // namespace

TEST_CASE("polar form of a vector") {
  auto [m0, a0] = vector_to_mag_angle({0, 0});
  CHECK(m0 == 0.0);
  CHECK(a0 == 0.0);
  auto [m1, a1] = vector_to_mag_angle({-1, 0});
  CHECK(m1 == 1.0);
  CHECK(a1 == std::numbers::pi);  // never -pi
  auto [m2, a2] = vector_to_mag_angle({0, -2});
  CHECK(m2 == 2.0);
  CHECK(a2 == doctest::Approx(-std::numbers::pi / 2));
  auto [m3, a3] = vector_to_mag_angle({3, 4});
  CHECK(m3 == doctest::Approx(5.0));
  CHECK(a3 == doctest::Approx(std::atan2(4.0, 3.0)));
}

TEST_CASE("lane polynomial evaluation") {
  const LaneSpec line({1.0, 0.5});
  CHECK(line.y_at(2.0) == doctest::Approx(2.0));
  CHECK(line.slope_at(2.0) == doctest::Approx(0.5));
  const LaneSpec parabola({0.0, 0.0, 1.0});
  CHECK(parabola.y_at(3.0) == doctest::Approx(9.0));
  CHECK(parabola.slope_at(3.0) == doctest::Approx(6.0));
  const LaneSpec flat({-2.0});
  CHECK(flat.y_at(100.0) == -2.0);
  CHECK(flat.slope_at(100.0) == 0.0);
  CHECK_THROWS_AS(LaneSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(LaneSpec({1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("equilateral triangle pushes every corner radially outward") {
  // Side 4, buffer 1, repulsion 2: each pair contributes 2 / (4-1)^2 = 2/9; the
  // two pushes meet at 60 degrees, so the resultant is 2 * (2/9) * cos(30) =
  // 2 sqrt(3) / 9, pointing away from the centroid.
  const double r = 4.0 / std::sqrt(3.0);  // circumradius for side 4
  std::vector<Vec2> pts;
  for (int i = 0; i < 3; ++i) {
    const double ang = std::numbers::pi / 2 + 2.0 * std::numbers::pi * i / 3;
    pts.push_back({r * std::cos(ang), r * std::sin(ang)});
  }
  const auto result = social_force_acceleration(pts, config_for(3));
  const double expected = 2.0 * std::sqrt(3.0) / 9.0;
  for (int i = 0; i < 3; ++i) {
    const Vec2 radial = pts[i] * (1.0 / r);  // unit vector from centroid
    const Vec2 a = result.accel[i];
    CHECK(std::abs(a.norm() - expected) < 1e-9);
    CHECK(std::abs(a.x - radial.x * expected) < 1e-9);
    CHECK(std::abs(a.y - radial.y * expected) < 1e-9);
  }
  // Distance matrix: diagonal clamps to buffer, off-diagonal is the true 4.
  CHECK(result.distances[0] == 1.0);
  CHECK(result.distances[1] == doctest::Approx(4.0));
}

TEST_CASE("pair repulsion saturates and cuts off") {
  SocialForceConfig c = config_for(2);
  // Overlapping within buffer: capped at threshold_a, direction kept exact.
  const std::vector<Vec2> close_pts = {Vec2{0, 0}, Vec2{0.5, 0}};
  const auto close = social_force_acceleration(close_pts, c);
  CHECK(close.accel[0].x == -c.threshold_a);
  CHECK(close.accel[0].y == 0.0);
  CHECK(close.accel[1].x == c.threshold_a);
  // Beyond threshold_distance: exactly zero.
  const std::vector<Vec2> far_pts = {Vec2{0, 0}, Vec2{45.0, 0}};
  const auto far = social_force_acceleration(far_pts, c);
  CHECK(far.accel[0].x == 0.0);
  CHECK(far.accel[0].y == 0.0);
  // Coincident agents cannot pick a push direction; they contribute nothing.
  const std::vector<Vec2> same_pts = {Vec2{1, 1}, Vec2{1, 1}};
  const auto coincident = social_force_acceleration(same_pts, c);
  CHECK(coincident.accel[0].x == 0.0);
  CHECK(coincident.accel[0].y == 0.0);
}

TEST_CASE("two agents at rest get mirrored baseline actions") {
  // Gap 10, buffer 1: repulsion 2/81 westward on the left agent. The
  // restoration term claws back half of one step's social push, leaving
  // magnitude (2/81) * 3/4 = 1/54 pointing away from the neighbour.
  const Scenario s = base_scenario({AgentInit({0, 0}, {0, 0}, 1.0),
                                    AgentInit({10, 0}, {0, 0}, 1.0)});
  const JointAction mdr = social_force_mdr(s, config_for(2));
  REQUIRE(mdr.actions.size() == 2);
  CHECK(mdr.actions[0].magnitude == doctest::Approx(1.0 / 54).epsilon(1e-9));
  CHECK(mdr.actions[1].magnitude == doctest::Approx(1.0 / 54).epsilon(1e-9));
  CHECK(std::abs(mdr.actions[0].direction) == doctest::Approx(std::numbers::pi).epsilon(1e-9));
  CHECK(std::abs(mdr.actions[1].direction) < 1e-9);
}

TEST_CASE("isolated agent at rest wants nothing") {
  const Scenario s = base_scenario({AgentInit({3, -2}, {0, 0}, 1.0)});
  const JointAction mdr = social_force_mdr(s, config_for(1));
  CHECK(mdr.actions[0].magnitude == 0.0);
  CHECK(mdr.actions[0].direction == 0.0);
}

TEST_CASE("speed clamp keeps one step under half the gap") {
  // Nearly touching pair: min distance 1.2, so the predicted speed may not
  // exceed (1.2/2 - 0.5) / 0.5 = 0.2 m/s no matter how hard the desired
  // velocity pulls toward the neighbour.
  const Scenario s = base_scenario({AgentInit({0, 0}, {0, 0}, 1.0),
                                    AgentInit({1.2, 0}, {0, 0}, 1.0)});
  SocialForceConfig c = config_for(2);
  c.desired_velocity[0] = {8.0, 0.0};
  const JointAction mdr = social_force_mdr(s, c);
  const Vec2 accel = mdr.actions[0].accel();
  const Vec2 v_after = s.agents[0].velocity + accel * c.time_per_step;
  CHECK(v_after.norm() <= 0.2 + 1e-9);
  CHECK(mdr.actions[0].magnitude == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(mdr.actions[0].direction == doctest::Approx(0.0));
}

TEST_CASE("threshold velocity caps an isolated sprinter") {
  // Desired velocity 30 predicts 15 m/s after one step; the cap brings it to
  // 10, the recovered acceleration 20 is then clipped to a_max.
  const Scenario s = base_scenario({AgentInit({0, 0}, {0, 0}, 1.0)});
  SocialForceConfig c = config_for(1);
  c.desired_velocity[0] = {30.0, 0.0};
  const JointAction mdr = social_force_mdr(s, c);
  CHECK(mdr.actions[0].magnitude == doctest::Approx(s.a_max));
  CHECK(mdr.actions[0].direction == doctest::Approx(0.0));
}

TEST_CASE("lane pull blends into the action") {
  // Isolated at-rest agent 2 m above a straight lane, weight 1: the PD pull
  // (0, -3) is averaged with the zero social action to (0, -1.5).
  const Scenario s = base_scenario({AgentInit({0, 2}, {0, 0}, 1.0)});
  SocialForceConfig c = config_for(1);
  c.lanes.push_back(LaneSpec({0.0}));
  c.lane_weight = 1.0;
  const JointAction mdr = social_force_mdr(s, c);
  CHECK(mdr.actions[0].magnitude == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mdr.actions[0].direction == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("lane controller converges without material overshoot") {
  // Closed-loop check of the controller gains: an agent released 2 m off a
  // straight lane, tracked with forward Euler at 1 ms, must be within 5% of
  // the lane after 6 s and never overshoot past 20%.
  const LaneSpec lane({0.0});
  SocialForceConfig c = config_for(1);
  double y = 2.0, vy = 0.0, x = 0.0;
  const double vx = 1.0, dt = 1e-3;
  double lowest = y;
  for (int step = 0; step < 6000; ++step) {
    const AgentInit state({x, y}, {vx, vy}, 1.0);
    const Vec2 a = fear::accelerate_to_lane(state, lane, c).accel();
    vy += a.y * dt;
    y += vy * dt;
    x += vx * dt;
    lowest = std::min(lowest, y);
  }
  CHECK(std::abs(y) < 0.1);     // within 5% of the 2 m offset
  CHECK(lowest > -0.4);         // overshoot below 20%
}

TEST_CASE("lane controller follows a sloped lane's normal") {
  // For lane y = x the normal is (-1, 1)/sqrt(2); an agent below the lane is
  // pulled along it, never straight up.
  const LaneSpec lane({0.0, 1.0});
  SocialForceConfig c = config_for(1);
  const AgentInit state({2.0, 0.0}, {0, 0}, 1.0);  // lane passes through (2, 2)
  const Action pull = fear::accelerate_to_lane(state, lane, c);
  // error = 2, pull = kp * 2 = 3 along (-1, 1)/sqrt(2).
  CHECK(pull.magnitude == doctest::Approx(3.0));
  CHECK(pull.direction == doctest::Approx(3.0 * std::numbers::pi / 4));
}

TEST_CASE("config validation") {
  SocialForceConfig c = config_for(1);
  c.buffer = -1.0;
  CHECK_THROWS_AS(fear::validate_social_force_config(c), std::invalid_argument);
  c = config_for(1);
  c.threshold_distance = 0.5;  // below buffer
  CHECK_THROWS_AS(fear::validate_social_force_config(c), std::invalid_argument);
  c = config_for(1);
  c.threshold_a = 0.0;
  CHECK_THROWS_AS(fear::validate_social_force_config(c), std::invalid_argument);
  c = config_for(1);
  c.time_per_step = 0.0;
  CHECK_THROWS_AS(fear::validate_social_force_config(c), std::invalid_argument);
  c = config_for(1);
  c.lane_kd = std::nan("");
  CHECK_THROWS_AS(fear::validate_social_force_config(c), std::invalid_argument);

  const Scenario s = base_scenario({AgentInit({0, 0}, {0, 0}, 1.0)});
  SocialForceConfig wrong_k = config_for(2);
  CHECK_THROWS_AS(social_force_mdr(s, wrong_k), std::invalid_argument);
}

TEST_CASE("policy dispatch") {
  const Scenario s = base_scenario({AgentInit({0, 0}, {1, 0}, 1.0)});
  fear::MdrPolicy zero;
  const JointAction z = fear::compute_mdr(s, zero);
  CHECK(z.actions[0].magnitude == 0.0);

  fear::MdrPolicy sf;
  sf.kind = fear::MdrPolicyKind::social_force;
  CHECK_THROWS_AS(fear::compute_mdr(s, sf), std::invalid_argument);
  sf.social_force = config_for(1);
  CHECK_NOTHROW(fear::compute_mdr(s, sf));
}
