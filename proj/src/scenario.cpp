#include "fear/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fear {

bool default_arc_refinement(int n_dir) {
  if (n_dir < 2) throw std::invalid_argument("default_arc_refinement: n_dir must be >= 2");
  return 2.0 * std::numbers::pi / n_dir > std::numbers::pi / 16.0;
}

void validate_scenario(const Scenario& scenario) {
  if (scenario.agents.empty())
    throw std::invalid_argument("scenario: needs at least one agent");
  if (!std::isfinite(scenario.a_max) || scenario.a_max <= 0.0)
    throw std::invalid_argument("scenario: a_max must be finite and > 0");
  if (scenario.n_mag < 1) throw std::invalid_argument("scenario: n_mag must be >= 1");
  if (scenario.n_dir < 2) throw std::invalid_argument("scenario: n_dir must be >= 2");
  if (!std::isfinite(scenario.epsilon) || scenario.epsilon <= 0.0)
    throw std::invalid_argument("scenario: epsilon must be finite and > 0");
}

void validate_joint(const Scenario& scenario, const JointAction& joint) {
  if (joint.actions.size() != scenario.agents.size())
    throw std::invalid_argument("joint action: needs exactly one action per agent");
  for (size_t i = 0; i < joint.actions.size(); ++i) {
    if (joint.actions[i].magnitude > scenario.a_max)
      throw std::invalid_argument("joint action: agent " + std::to_string(i + 1) +
                                  " exceeds a_max");
  }
}

}  // namespace fear
