#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fear/scenario.hpp"

namespace fear {

// Polynomial lane center line y(x), coefficients in ascending powers.
// A horizontal lane is the single-coefficient case.
struct LaneSpec {
  std::vector<double> coeffs;

  explicit LaneSpec(std::vector<double> coeffs_);

  double y_at(double x) const;
  double slope_at(double x) const;
};

// Parameters of the social-force baseline policy. Repulsion pushes agents
// apart with an inverse-square falloff over the gap beyond `buffer`, cut off
// at threshold_distance and capped per pair at threshold_a. The remaining
// terms shape the per-agent correction toward desired velocity and lane.
struct SocialForceConfig {
  double repulsion_k = 2.0;
  double threshold_distance = 40.0;
  double buffer = 1.0;
  double threshold_a = 5.0;
  double velocity_gain = 1.0;     // pull toward desired_velocity, 1/s
  double restore_factor = 0.5;    // weight of the velocity-restoration term
  double time_per_step = 0.5;     // s, horizon of the one-step speed clamp
  double threshold_velocity = 10.0;
  std::vector<Vec2> desired_velocity;          // one per agent
  std::vector<std::optional<LaneSpec>> lanes;  // one per agent, or empty
  double lane_weight = 0.0;                    // blend weight of lane pull
  double lane_kp = 1.5;  // lane controller gains; defaults critically damped
  double lane_kd = 2.4;  // for metre-scale offsets over a few seconds
};

// Throws std::invalid_argument when a config bound is violated
// (buffer >= 0, threshold_distance > buffer, threshold_a > 0,
// time_per_step > 0, finite gains).
void validate_social_force_config(const SocialForceConfig& config);

// Polar form of v: (|v|, atan2) with the angle in (-pi, pi]; the zero vector
// maps to (0, 0).
std::pair<double, double> vector_to_mag_angle(const Vec2& v);

struct SocialForceResult {
  std::vector<Vec2> accel;        // net social acceleration per agent
  std::vector<double> distances;  // k x k row-major, diagonal and buffer
                                  // clamps applied
};

// Pairwise repulsion summed per agent. Coincident agents (zero separation)
// contribute nothing: the push direction is undefined there.
SocialForceResult social_force_acceleration(std::span<const Vec2> positions,
                                            const SocialForceConfig& config);

// The social-force baseline action for every agent: social repulsion plus
// velocity restoration and desired-velocity pull, speed-clamped so one step
// of time_per_step cannot eat more than half the gap to the nearest agent,
// then blended with the lane pull and clipped into the action space.
JointAction social_force_mdr(const Scenario& scenario, const SocialForceConfig& config);

// The trivial baseline: every agent keeps its current velocity.
JointAction zero_mdr(const Scenario& scenario);

// PD pull toward the lane center line: vertical offset and lateral velocity
// produce an acceleration along the lane normal, capped at threshold_a.
Action accelerate_to_lane(const AgentInit& init, const LaneSpec& lane,
                          const SocialForceConfig& config);

enum class MdrPolicyKind { zero, social_force };

// Which baseline policy a scenario uses; social_force carries its config.
struct MdrPolicy {
  MdrPolicyKind kind = MdrPolicyKind::zero;
  std::optional<SocialForceConfig> social_force;
};

// Evaluates the policy for every agent of the scenario.
JointAction compute_mdr(const Scenario& scenario, const MdrPolicy& policy);

}  // namespace fear
