#include "fear/mdr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fear {
namespace {

constexpr double kSelfDistance = 1e-5;
constexpr double kZeroSeparation = 1e-12;

double pair_repulsion_magnitude(double clamped_distance, const SocialForceConfig& config) {
  if (clamped_distance > config.threshold_distance) return 0.0;
  const double gap = clamped_distance - config.buffer;
  if (gap <= 0.0) return config.threshold_a;
  return std::min(config.repulsion_k / (gap * gap), config.threshold_a);
}

}  // namespace

LaneSpec::LaneSpec(std::vector<double> coeffs_) : coeffs(std::move(coeffs_)) {
  if (coeffs.empty()) throw std::invalid_argument("LaneSpec: needs at least one coefficient");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw std::invalid_argument("LaneSpec: non-finite coefficient");
}

double LaneSpec::y_at(double x) const {
  double y = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) y = y * x + *it;
  return y;
}

double LaneSpec::slope_at(double x) const {
  double s = 0.0;
  for (size_t n = coeffs.size() - 1; n >= 1; --n) s = s * x + coeffs[n] * static_cast<double>(n);
  return s;
}

void validate_social_force_config(const SocialForceConfig& config) {
  if (!std::isfinite(config.buffer) || config.buffer < 0.0)
    throw std::invalid_argument("social force config: buffer must be >= 0");
  if (!std::isfinite(config.threshold_distance) ||
      config.threshold_distance <= config.buffer)
    throw std::invalid_argument("social force config: threshold_distance must exceed buffer");
  if (!std::isfinite(config.threshold_a) || config.threshold_a <= 0.0)
    throw std::invalid_argument("social force config: threshold_a must be > 0");
  if (!std::isfinite(config.time_per_step) || config.time_per_step <= 0.0)
    throw std::invalid_argument("social force config: time_per_step must be > 0");
  for (double g : {config.repulsion_k, config.velocity_gain, config.restore_factor,
                   config.threshold_velocity, config.lane_weight, config.lane_kp,
                   config.lane_kd})
    if (!std::isfinite(g)) throw std::invalid_argument("social force config: non-finite gain");
}

std::pair<double, double> vector_to_mag_angle(const Vec2& v) {
  const double mag = v.norm();
  if (mag == 0.0) return {0.0, 0.0};
  double angle = std::atan2(v.y, v.x);
  if (angle == -std::numbers::pi) angle = std::numbers::pi;
  return {mag, angle};
}

SocialForceResult social_force_acceleration(std::span<const Vec2> positions,
                                            const SocialForceConfig& config) {
  if (positions.empty())
    throw std::invalid_argument("social_force_acceleration: needs at least one agent");
  validate_social_force_config(config);
  const size_t k = positions.size();

  SocialForceResult out;
  out.accel.assign(k, Vec2{});
  out.distances.assign(k * k, 0.0);

  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      const Vec2 delta = positions[i] - positions[j];
      const double raw = i == j ? kSelfDistance : delta.norm();
      const double clamped = std::max(raw, config.buffer);
      out.distances[i * k + j] = clamped;
      if (i == j) continue;
      const double mag = pair_repulsion_magnitude(clamped, config);
      if (mag == 0.0 || delta.norm() <= kZeroSeparation) continue;
      out.accel[i] += delta * (mag / delta.norm());
    }
  }
  return out;
}

JointAction social_force_mdr(const Scenario& scenario, const SocialForceConfig& config) {
  validate_scenario(scenario);
  validate_social_force_config(config);
  const size_t k = scenario.agent_count();
  if (config.desired_velocity.size() != k)
    throw std::invalid_argument("social_force_mdr: desired_velocity must have one entry per agent");
  if (!config.lanes.empty() && config.lanes.size() != k)
    throw std::invalid_argument("social_force_mdr: lanes must be empty or one entry per agent");

  std::vector<Vec2> positions;
  positions.reserve(k);
  for (const AgentInit& a : scenario.agents) positions.push_back(a.position);
  const SocialForceResult social = social_force_acceleration(positions, config);

  const double dt = config.time_per_step;
  JointAction out;
  out.actions.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    double min_distance = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < k; ++j)
      if (j != i) min_distance = std::min(min_distance, social.distances[i * k + j]);

    const Vec2 v0 = scenario.agents[i].velocity;
    const Vec2 social_v = social.accel[i] * dt;
    const Vec2 restore = (v0 - social_v) * config.restore_factor;
    const Vec2 desired_pull = (config.desired_velocity[i] - v0) * config.velocity_gain;
    const Vec2 a_combined = social.accel[i] + restore + desired_pull;

    // One step of the combined acceleration must not close more than half the
    // gap to the nearest agent, nor exceed the speed cap.
    const Vec2 v_predicted = v0 + a_combined * dt;
    const auto [speed, heading] = vector_to_mag_angle(v_predicted);
    const double v_max = std::max(
        0.0, std::min((min_distance / 2.0 - config.buffer / 2.0) / dt,
                      config.threshold_velocity));
    const double clamped_speed = std::clamp(speed, 0.0, v_max);
    const Vec2 v_clamped{clamped_speed * std::cos(heading),
                         clamped_speed * std::sin(heading)};
    Vec2 a_final = (v_clamped - v0) * (1.0 / dt);

    if (!config.lanes.empty() && config.lanes[i]) {
      const Action lane_pull = accelerate_to_lane(scenario.agents[i], *config.lanes[i], config);
      const Vec2 lane_vec = lane_pull.accel();
      a_final = (a_final + lane_vec * config.lane_weight) * (1.0 / (1.0 + config.lane_weight));
    }

    auto [mag, dir] = vector_to_mag_angle(a_final);
    mag = std::min(mag, scenario.a_max);
    out.actions.push_back(Action(mag, dir));
  }
  return out;
}

JointAction zero_mdr(const Scenario& scenario) {
  validate_scenario(scenario);
  JointAction out;
  out.actions.assign(scenario.agent_count(), Action(0.0, 0.0));
  return out;
}

JointAction compute_mdr(const Scenario& scenario, const MdrPolicy& policy) {
  if (policy.kind == MdrPolicyKind::zero) return zero_mdr(scenario);
  if (!policy.social_force)
    throw std::invalid_argument("compute_mdr: social_force policy without config");
  return social_force_mdr(scenario, *policy.social_force);
}

Action accelerate_to_lane(const AgentInit& init, const LaneSpec& lane,
                          const SocialForceConfig& config) {
  const double x = init.position.x;
  const double error = lane.y_at(x) - init.position.y;
  const double slope = lane.slope_at(x);
  const double error_rate = slope * init.velocity.x - init.velocity.y;
  const double pull = config.lane_kp * error + config.lane_kd * error_rate;

  const double norm_len = std::sqrt(1.0 + slope * slope);
  const Vec2 lane_normal{-slope / norm_len, 1.0 / norm_len};
  const auto [mag, dir] = vector_to_mag_angle(lane_normal * pull);
  return Action(std::min(mag, config.threshold_a), dir);
}

}  // namespace fear
