#include "fear/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "fear/collision.hpp"
#include "fear/parallel.hpp"

namespace fear {
namespace {

bool same_action(const Action& a, const Action& b) {
  return a.magnitude == b.magnitude && a.direction == b.direction;
}

double policy_score(const CandidateEvaluation& eval, AggregateKind kind) {
  switch (kind) {
    case AggregateKind::mean:
      return eval.mean;
    case AggregateKind::max:
      return eval.max;
    case AggregateKind::min:
      return eval.min;
    case AggregateKind::count_net:
      return static_cast<double>(eval.count_net());
  }
  throw std::invalid_argument("select_action: unknown aggregation kind");
}

}  // namespace

std::vector<Action> candidate_grid(double a_max, int n_mag, int n_dir) {
  if (!(a_max > 0.0)) throw std::invalid_argument("candidate_grid: a_max must be > 0");
  if (n_mag < 1 || n_dir < 1)
    throw std::invalid_argument("candidate_grid: grid counts must be >= 1");
  const double delta_mag = a_max / n_mag;
  const double delta_dir = 2.0 * std::numbers::pi / n_dir;
  std::vector<Action> grid;
  grid.reserve(static_cast<size_t>(n_mag) * n_dir);
  for (int m = 1; m <= n_mag; ++m)
    for (int d = 1; d <= n_dir; ++d)
      grid.emplace_back((m - 0.5) * delta_mag,
                        -std::numbers::pi + (d - 0.5) * delta_dir);
  return grid;
}

std::vector<CandidateEvaluation> evaluate_candidates(const Scenario& scenario,
                                                     const JointAction& predicted,
                                                     const JointAction& mdr, size_t ego,
                                                     std::span<const Action> grid) {
  validate_scenario(scenario);
  validate_joint(scenario, mdr);
  const size_t k = scenario.agent_count();
  if (ego >= k) throw std::invalid_argument("evaluate_candidates: ego index out of range");
  if (predicted.actions.size() != k)
    throw std::invalid_argument("evaluate_candidates: predicted joint action has wrong length");
  for (size_t j = 0; j < k; ++j)
    if (j != ego && predicted.actions[j].magnitude > scenario.a_max)
      throw std::invalid_argument("evaluate_candidates: predicted action exceeds a_max");
  for (const Action& c : grid)
    if (c.magnitude > scenario.a_max)
      throw std::invalid_argument("evaluate_candidates: grid action exceeds a_max");

  // Baseline context: ego at its baseline action. These hypervolumes do not
  // depend on the candidate, so they are shared across the whole grid.
  const JointAction baseline = intervene(predicted, ego, mdr.actions[ego]);
  std::vector<double> v_baseline(k, 0.0);
  parallel_for(k, [&](size_t j) {
    if (j == ego) return;
    v_baseline[j] = feasible_hypervolume(scenario, baseline, j).hypervolume;
  });

  std::vector<CandidateEvaluation> evals(grid.size());
  parallel_for(grid.size(), [&](size_t c) {
    const Action& candidate = grid[c];
    const JointAction joint = intervene(predicted, ego, candidate);

    CandidateEvaluation& eval = evals[c];
    eval.candidate = candidate;
    eval.fear_row.assign(k, 0.0);
    eval.ego_collides = agent_collides(scenario, joint, ego);

    bool any = false;
    double sum = 0.0;
    for (size_t j = 0; j < k; ++j) {
      if (j == ego) continue;
      const double v_actual = same_action(candidate, mdr.actions[ego])
                                  ? v_baseline[j]
                                  : feasible_hypervolume(scenario, joint, j).hypervolume;
      const double value =
          clip_z((v_baseline[j] - v_actual) / (v_baseline[j] + scenario.epsilon));
      eval.fear_row[j] = value;
      sum += value;
      if (!any) {
        eval.min = value;
        eval.max = value;
        any = true;
      } else {
        eval.min = std::min(eval.min, value);
        eval.max = std::max(eval.max, value);
      }
      if (value > kSignCountTolerance) ++eval.count_assertive;
      if (value < -kSignCountTolerance) ++eval.count_courteous;
    }
    eval.mean = any ? sum / static_cast<double>(k - 1) : 0.0;
  });
  return evals;
}

SelectionResult select_action(std::span<const CandidateEvaluation> evals,
                              const AggregationPolicy& policy) {
  if (evals.empty()) throw std::invalid_argument("select_action: no candidates");

  SelectionResult result;
  result.scores.reserve(evals.size());
  for (const CandidateEvaluation& eval : evals)
    result.scores.push_back(policy_score(eval, policy.kind));

  result.ranking.resize(evals.size());
  for (size_t i = 0; i < evals.size(); ++i) result.ranking[i] = i;
  std::sort(result.ranking.begin(), result.ranking.end(), [&](size_t a, size_t b) {
    const bool mask_a = policy.collision_mask && evals[a].ego_collides;
    const bool mask_b = policy.collision_mask && evals[b].ego_collides;
    return std::make_tuple(mask_a, result.scores[a], evals[a].candidate.magnitude,
                           std::abs(evals[a].candidate.direction), a) <
           std::make_tuple(mask_b, result.scores[b], evals[b].candidate.magnitude,
                           std::abs(evals[b].candidate.direction), b);
  });

  const size_t best = result.ranking.front();
  if (policy.collision_mask && evals[best].ego_collides)
    throw NoFeasibleCandidateError(best, evals[best].candidate);
  result.selected_index = best;
  result.selected = evals[best].candidate;
  return result;
}

}  // namespace fear
