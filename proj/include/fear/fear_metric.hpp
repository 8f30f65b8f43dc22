#pragma once

#include <vector>

#include "fear/feasibility.hpp"
#include "fear/scenario.hpp"

namespace fear {

// Full k x k responsibility matrix. Row = actor, column = affected agent.
// values are clipped to [-1, 1]; raw keeps the unclipped ratios for audit
// output. context_hypervolume(i, j) is the denominator context term for the
// (i, j) entry: the affected agent's hypervolume with the actor (or, on the
// diagonal, everyone else) moved to its baseline action.
// actual_hypervolume(j) is agent j's hypervolume under the joint action.
struct FeARMatrix {
  size_t agent_count = 0;
  std::vector<double> values;
  std::vector<double> raw;
  std::vector<double> context_hv;
  std::vector<double> actual_hv;
  JointAction mdr;

  double value(size_t actor, size_t affected) const;
  double raw_value(size_t actor, size_t affected) const;
  double context_hypervolume(size_t actor, size_t affected) const;
  double actual_hypervolume(size_t affected) const;
};

// Copy of joint with agent i's entry replaced.
JointAction intervene(const JointAction& joint, size_t agent, const Action& replacement);

// Clips into [-1, 1]: 1 when x >= 1, -1 when x <= -1, identity between.
// Throws std::invalid_argument on NaN.
double clip_z(double x);

// Off-diagonal responsibility of `actor` toward `affected`: how much the
// actor's factual action shrank (positive) or grew (negative) the affected
// agent's feasible action space, relative to the actor taking its baseline
// action instead. Requires actor != affected.
double fear_pair(const Scenario& scenario, const JointAction& joint,
                 const JointAction& mdr, size_t actor, size_t affected,
                 ContextMode mode = ContextMode::ghost_excluded);

// Diagonal entry: the fraction of agent i's action space left feasible under
// the factual joint action, relative to everyone else taking their baseline.
double fear_self(const Scenario& scenario, const JointAction& joint,
                 const JointAction& mdr, size_t agent,
                 ContextMode mode = ContextMode::ghost_excluded);

// All k*k entries. Per-affected-agent hypervolumes under the factual joint
// action are computed once and shared across rows; a context whose joint
// action is bitwise identical to the factual one reuses them outright.
FeARMatrix fear_matrix(const Scenario& scenario, const JointAction& joint,
                       const JointAction& mdr,
                       ContextMode mode = ContextMode::ghost_excluded);

}  // namespace fear
