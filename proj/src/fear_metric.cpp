#include "fear/fear_metric.hpp"

#include <cmath>
#include <stdexcept>

#include "fear/parallel.hpp"

namespace fear {
namespace {

bool same_action(const Action& a, const Action& b) {
  return a.magnitude == b.magnitude && a.direction == b.direction;
}

double ratio_pair(double v_context, double v_actual, double epsilon) {
  return (v_context - v_actual) / (v_context + epsilon);
}

double ratio_self(double v_actual, double v_context, double epsilon) {
  return v_actual / (v_context + epsilon);
}

void check_matrix_index(const FeARMatrix& m, size_t actor, size_t affected) {
  if (actor >= m.agent_count || affected >= m.agent_count)
    throw std::invalid_argument("FeARMatrix: index out of range");
}

}  // namespace

double FeARMatrix::value(size_t actor, size_t affected) const {
  check_matrix_index(*this, actor, affected);
  return values[actor * agent_count + affected];
}

double FeARMatrix::raw_value(size_t actor, size_t affected) const {
  check_matrix_index(*this, actor, affected);
  return raw[actor * agent_count + affected];
}

double FeARMatrix::context_hypervolume(size_t actor, size_t affected) const {
  check_matrix_index(*this, actor, affected);
  return context_hv[actor * agent_count + affected];
}

double FeARMatrix::actual_hypervolume(size_t affected) const {
  check_matrix_index(*this, affected, affected);
  return actual_hv[affected];
}

JointAction intervene(const JointAction& joint, size_t agent, const Action& replacement) {
  if (agent >= joint.actions.size())
    throw std::invalid_argument("intervene: agent index out of range");
  JointAction out = joint;
  out.actions[agent] = replacement;
  return out;
}

double clip_z(double x) {
  if (std::isnan(x)) throw std::invalid_argument("clip_z: NaN input");
  if (x >= 1.0) return 1.0;
  if (x <= -1.0) return -1.0;
  return x;
}

double fear_pair(const Scenario& scenario, const JointAction& joint,
                 const JointAction& mdr, size_t actor, size_t affected,
                 ContextMode mode) {
  if (actor == affected)
    throw std::invalid_argument("fear_pair: actor and affected must differ");
  validate_joint(scenario, mdr);
  const JointAction context = intervene(joint, actor, mdr.actions[actor]);
  const double v_context = feasible_hypervolume(scenario, context, affected, mode).hypervolume;
  const double v_actual = feasible_hypervolume(scenario, joint, affected, mode).hypervolume;
  return clip_z(ratio_pair(v_context, v_actual, scenario.epsilon));
}

double fear_self(const Scenario& scenario, const JointAction& joint,
                 const JointAction& mdr, size_t agent, ContextMode mode) {
  if (agent >= scenario.agent_count())
    throw std::invalid_argument("fear_self: agent index out of range");
  validate_joint(scenario, mdr);
  JointAction context = mdr;
  context.actions[agent] = joint.actions[agent];
  const double v_actual = feasible_hypervolume(scenario, joint, agent, mode).hypervolume;
  const double v_context = feasible_hypervolume(scenario, context, agent, mode).hypervolume;
  return clip_z(ratio_self(v_actual, v_context, scenario.epsilon));
}

FeARMatrix fear_matrix(const Scenario& scenario, const JointAction& joint,
                       const JointAction& mdr, ContextMode mode) {
  validate_scenario(scenario);
  validate_joint(scenario, joint);
  validate_joint(scenario, mdr);
  const size_t k = scenario.agent_count();

  FeARMatrix out;
  out.agent_count = k;
  out.values.assign(k * k, 0.0);
  out.raw.assign(k * k, 0.0);
  out.context_hv.assign(k * k, 0.0);
  out.actual_hv.assign(k, 0.0);
  out.mdr = mdr;

  // The factual-context hypervolume of each affected agent feeds every entry
  // of its column, so it is computed once up front.
  parallel_for(k, [&](size_t j) {
    out.actual_hv[j] = feasible_hypervolume(scenario, joint, j, mode).hypervolume;
  });

  parallel_for(k * k, [&](size_t idx) {
    const size_t i = idx / k;
    const size_t j = idx % k;
    double v_context;
    if (i != j) {
      // Context: actor i moved to its baseline. When the actor already is at
      // its baseline the context equals the factual joint action and the
      // cached hypervolume applies unchanged.
      if (same_action(joint.actions[i], mdr.actions[i])) {
        v_context = out.actual_hv[j];
      } else {
        const JointAction context = intervene(joint, i, mdr.actions[i]);
        v_context = feasible_hypervolume(scenario, context, j, mode).hypervolume;
      }
      out.raw[idx] = ratio_pair(v_context, out.actual_hv[j], scenario.epsilon);
    } else {
      JointAction context = mdr;
      context.actions[i] = joint.actions[i];
      bool all_baseline = true;
      for (size_t p = 0; p < k && all_baseline; ++p)
        all_baseline = same_action(context.actions[p], joint.actions[p]);
      v_context = all_baseline
                      ? out.actual_hv[i]
                      : feasible_hypervolume(scenario, context, i, mode).hypervolume;
      out.raw[idx] = ratio_self(out.actual_hv[i], v_context, scenario.epsilon);
    }
    out.context_hv[idx] = v_context;
    out.values[idx] = clip_z(out.raw[idx]);
  });
  return out;
}

}  // namespace fear
