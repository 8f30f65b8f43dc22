#pragma once

#include <string>
#include <vector>

#include "fear/fear_metric.hpp"
#include "fear/scenario_io.hpp"

namespace fear {

// |value| must exceed this before a strict sign claim counts as satisfied;
// values inside the band satisfy only zero claims.
inline constexpr double kSignMagnitudeTol = 0.01;

// One claim about a matrix entry of a bundled case study. Indices are
// 1-based agent ids as used in the scenario documents.
struct SignCheck {
  enum class Kind { positive, negative, zero };
  int actor;
  int affected;
  Kind kind;
};

struct CasePattern {
  // F(actor_hi, affected_hi) must exceed F(actor_lo, affected_lo).
  struct Ordering {
    int actor_hi, affected_hi, actor_lo, affected_lo;
  };

  std::string id;    // single letter, also names the scenario file case_<id>.json
  std::string note;  // one-line description of the interaction
  std::vector<SignCheck> checks;
  std::vector<Ordering> orderings;
};

// The bundled two- and three-agent case studies with their expected
// interaction sign patterns (documented in scenarios/SIGNS.md).
const std::vector<CasePattern>& case_patterns();

struct CaseStudyOutcome {
  bool ok = false;
  int matrices_written = 0;
  std::string report;
};

// Runs every bundled case study from scenario_dir: computes the FeAR matrix
// per scenario document, writes matrix CSVs and trajectory renders into
// out_dir, evaluates the expected sign patterns, and adds the three-policy
// head-on sensitivity grid (three joint actions crossed with three
// baselines). The full report also lands in out_dir/signs_report.txt.
CaseStudyOutcome run_case_studies(const std::string& scenario_dir,
                                  const std::string& out_dir);

}  // namespace fear
