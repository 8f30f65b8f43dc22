#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "fear/fear_metric.hpp"
#include "fear/mdr.hpp"
#include "fear/planner.hpp"
#include "fear/scenario.hpp"

namespace fear {

// Any failure to turn a document into valid in-memory objects: JSON syntax
// (position-annotated by the parser), schema violations, or value constraints.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct LoadedScenario {
  Scenario scenario;
  JointAction joint;
  MdrPolicy mdr;
};

// Parses and validates a scenario document. The schema is strict: unknown
// fields anywhere are errors, agent ids must be unique and contiguous from 1,
// angles are radians. Obstacle vertex lists are hulled; a vertex strictly
// inside its own hull means the listed outline was not convex and is
// rejected. Throws ScenarioError.
LoadedScenario load_scenario(const std::string& text);

// Same, reading from a file; the path is part of any error message.
LoadedScenario load_scenario_file(const std::string& path);

// Canonical document for the loaded objects; load(save(x)) == x field for
// field, bit for bit on every number.
std::string save_scenario(const LoadedScenario& loaded);

// Matrix CSV: header "actor\affected,1,..,k", then one row per actor with
// values to six decimals. With audit, parallel blocks follow carrying the
// unclipped ratios and the hypervolume terms behind every entry.
std::string export_matrix(const FeARMatrix& matrix, bool audit = false);

// Candidate table CSV: a,theta,fear_1..fear_k,collides,mean,min,max,count_net.
std::string export_evaluations(std::span<const CandidateEvaluation> evals, size_t agent_count);

}  // namespace fear
