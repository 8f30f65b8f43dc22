#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "fear/fear_metric.hpp"
#include "fear/scenario.hpp"

namespace fear {

// One scored candidate action for the ego agent. fear_row has one entry per
// agent; the ego's own slot is kept at 0 so indices line up with agent
// indices. Aggregates are over the non-ego entries only.
struct CandidateEvaluation {
  Action candidate;
  std::vector<double> fear_row;
  bool ego_collides = false;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int count_assertive = 0;
  int count_courteous = 0;

  int count_net() const { return count_assertive - count_courteous; }
};

enum class AggregateKind { mean, max, min, count_net };

struct AggregationPolicy {
  AggregateKind kind = AggregateKind::mean;
  bool collision_mask = true;
};

// FeAR values within this band of zero count as neither assertive nor
// courteous; keeps floating-point dust out of the counts.
inline constexpr double kSignCountTolerance = 1e-9;

// Subset-center actions of the partition: magnitudes (m - 1/2) * delta_mag,
// directions -pi + (d - 1/2) * delta_dir.
std::vector<Action> candidate_grid(double a_max, int n_mag, int n_dir);

// Scores every candidate: the ego's entry in `predicted` is replaced by the
// candidate, the resulting row of FeAR values toward all other agents is
// computed, and the ego's own collision flag is recorded. The baseline-side
// hypervolumes are identical across candidates and computed once.
std::vector<CandidateEvaluation> evaluate_candidates(const Scenario& scenario,
                                                     const JointAction& predicted,
                                                     const JointAction& mdr, size_t ego,
                                                     std::span<const Action> grid);

struct SelectionResult {
  size_t selected_index = 0;
  Action selected;
  // All candidate indices ordered best-first by (score, magnitude,
  // |direction|, grid order); under collision masking the colliding
  // candidates rank after every collision-free one, in the same order.
  std::vector<size_t> ranking;
  std::vector<double> scores;
};

// Raised when collision masking removes every candidate. Carries the best
// colliding candidate as an advisory.
class NoFeasibleCandidateError : public std::runtime_error {
 public:
  NoFeasibleCandidateError(size_t index, Action advisory)
      : std::runtime_error("no collision-free candidate"),
        best_colliding_index(index),
        best_colliding(advisory) {}

  size_t best_colliding_index;
  Action best_colliding;
};

// Argmin of the policy scalar over (masked) candidates; ties prefer the
// gentler action: lower magnitude, then direction closest to 0, then grid
// order.
SelectionResult select_action(std::span<const CandidateEvaluation> evals,
                              const AggregationPolicy& policy);

}  // namespace fear
