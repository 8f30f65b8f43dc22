#include "fear/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <string_view>

#include "json.hpp"

namespace fear {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ScenarioError(message); }

void require_object(const ordered_json& v, const std::string& where) {
  if (!v.is_object()) fail(where + ": expected an object");
}

void check_keys(const ordered_json& obj, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(where + ": unknown field '" + item.key() + "'");
  }
}

double num_field(const ordered_json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing field '" + key + "'");
  if (!it->is_number()) fail(where + ": field '" + key + "' must be a number");
  return it->get<double>();
}

double num_or(const ordered_json& obj, const char* key, const std::string& where,
              double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail(where + ": field '" + key + "' must be a number");
  return it->get<double>();
}

int int_field(const ordered_json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing field '" + key + "'");
  if (!it->is_number_integer()) fail(where + ": field '" + key + "' must be an integer");
  return it->get<int>();
}

int int_or(const ordered_json& obj, const char* key, const std::string& where, int fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) fail(where + ": field '" + key + "' must be an integer");
  return it->get<int>();
}

Vec2 vec2_entry(const ordered_json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(where + ": expected [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

bool strictly_inside(const ConvexPolygon& hull, const Vec2& p) {
  const auto& verts = hull.vertices();
  if (verts.size() < 3) return false;
  for (size_t e = 0; e < verts.size(); ++e) {
    const Vec2& a = verts[e];
    const Vec2& b = verts[(e + 1) % verts.size()];
    if ((b - a).cross(p - a) <= kGeomTol) return false;
  }
  return true;
}

SocialForceConfig parse_social_force(const ordered_json& block, size_t agent_count) {
  const std::string where = "mdr.social_force";
  require_object(block, where);
  check_keys(block, where,
             {"k", "threshold_distance", "buffer", "threshold_a", "k_v",
              "restore_factor", "time_per_step", "threshold_velocity",
              "desired_velocity", "lanes", "k_lane", "lane_kp", "lane_kd"});

  SocialForceConfig config;
  config.repulsion_k = num_or(block, "k", where, config.repulsion_k);
  config.threshold_distance =
      num_or(block, "threshold_distance", where, config.threshold_distance);
  config.buffer = num_or(block, "buffer", where, config.buffer);
  config.threshold_a = num_or(block, "threshold_a", where, config.threshold_a);
  config.velocity_gain = num_or(block, "k_v", where, config.velocity_gain);
  config.restore_factor = num_or(block, "restore_factor", where, config.restore_factor);
  config.time_per_step = num_or(block, "time_per_step", where, config.time_per_step);
  config.threshold_velocity =
      num_or(block, "threshold_velocity", where, config.threshold_velocity);
  config.lane_weight = num_or(block, "k_lane", where, config.lane_weight);
  config.lane_kp = num_or(block, "lane_kp", where, config.lane_kp);
  config.lane_kd = num_or(block, "lane_kd", where, config.lane_kd);

  const auto desired = block.find("desired_velocity");
  if (desired == block.end()) fail(where + ": missing field 'desired_velocity'");
  if (!desired->is_array() || desired->size() != agent_count)
    fail(where + ": desired_velocity must list one [vx, vy] per agent");
  for (size_t i = 0; i < desired->size(); ++i)
    config.desired_velocity.push_back(
        vec2_entry((*desired)[i], where + ".desired_velocity[" + std::to_string(i) + "]"));

  const auto lanes = block.find("lanes");
  if (lanes != block.end()) {
    if (!lanes->is_array() || lanes->size() != agent_count)
      fail(where + ": lanes must list one entry (coefficients or null) per agent");
    for (size_t i = 0; i < lanes->size(); ++i) {
      const auto& entry = (*lanes)[i];
      const std::string lane_where = where + ".lanes[" + std::to_string(i) + "]";
      if (entry.is_null()) {
        config.lanes.emplace_back(std::nullopt);
        continue;
      }
      if (!entry.is_array() || entry.empty()) fail(lane_where + ": expected coefficients or null");
      std::vector<double> coeffs;
      for (const auto& c : entry) {
        if (!c.is_number()) fail(lane_where + ": coefficients must be numbers");
        coeffs.push_back(c.get<double>());
      }
      config.lanes.emplace_back(LaneSpec(std::move(coeffs)));
    }
  }

  try {
    validate_social_force_config(config);
  } catch (const std::invalid_argument& e) {
    fail(std::string("mdr.social_force: ") + e.what());
  }
  return config;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void append_matrix_block(std::string& out, const std::string& label,
                         const FeARMatrix& matrix, const std::vector<double>& cells) {
  const size_t k = matrix.agent_count;
  out += label + "\\affected";
  for (size_t j = 1; j <= k; ++j) out += "," + std::to_string(j);
  out += "\n";
  for (size_t i = 0; i < k; ++i) {
    out += std::to_string(i + 1);
    for (size_t j = 0; j < k; ++j) out += "," + format_value(cells[i * k + j]);
    out += "\n";
  }
}

}  // namespace

LoadedScenario load_scenario(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    // exception, not parse_error: number overflow surfaces as out_of_range.
    fail(std::string("parse error: ") + e.what());
  }
  require_object(doc, "document");
  check_keys(doc, "document", {"schema_version", "agents", "obstacles", "params", "mdr"});

  const auto version = doc.find("schema_version");
  if (version == doc.end()) fail("document: missing field 'schema_version'");
  if (!version->is_string() || version->get<std::string>() != "1")
    fail("document: unsupported schema_version (expected \"1\")");

  const auto params_it = doc.find("params");
  if (params_it == doc.end()) fail("document: missing field 'params'");
  require_object(*params_it, "params");
  check_keys(*params_it, "params",
             {"T", "N_t", "a_max", "N_m", "N_d", "epsilon", "arc_refinement"});

  Scenario scenario;
  const double horizon = num_field(*params_it, "T", "params");
  const int intervals = int_field(*params_it, "N_t", "params");
  if (!(horizon > 0.0)) fail("params: T must be > 0");
  if (intervals < 1) fail("params: N_t must be >= 1");
  scenario.grid = TimeGrid(horizon, intervals);
  scenario.a_max = num_field(*params_it, "a_max", "params");
  if (!(scenario.a_max > 0.0)) fail("params: a_max must be > 0");
  scenario.n_mag = int_or(*params_it, "N_m", "params", 16);
  scenario.n_dir = int_or(*params_it, "N_d", "params", 32);
  if (scenario.n_mag < 1) fail("params: N_m must be >= 1");
  if (scenario.n_dir < 2) fail("params: N_d must be >= 2");
  scenario.epsilon = num_or(*params_it, "epsilon", "params", 1e-6);
  if (!(scenario.epsilon > 0.0)) fail("params: epsilon must be > 0");
  const auto arc = params_it->find("arc_refinement");
  if (arc == params_it->end()) {
    scenario.arc_refinement = default_arc_refinement(scenario.n_dir);
  } else {
    if (!arc->is_boolean()) fail("params: field 'arc_refinement' must be a boolean");
    scenario.arc_refinement = arc->get<bool>();
  }

  const auto agents_it = doc.find("agents");
  if (agents_it == doc.end()) fail("document: missing field 'agents'");
  if (!agents_it->is_array() || agents_it->empty())
    fail("agents: expected a non-empty array");

  const size_t k = agents_it->size();
  scenario.agents.assign(k, AgentInit({0, 0}, {0, 0}, 1.0));
  JointAction joint;
  joint.actions.assign(k, Action(0.0, 0.0));
  std::vector<bool> seen(k, false);

  for (const auto& entry : *agents_it) {
    require_object(entry, "agents[]");
    check_keys(entry, "agent", {"id", "x", "y", "vx", "vy", "box_side", "action"});
    const int id = int_field(entry, "id", "agent");
    if (id < 1 || static_cast<size_t>(id) > k)
      fail("agent id " + std::to_string(id) + ": ids must be contiguous from 1 to " +
           std::to_string(k));
    if (seen[id - 1]) fail("agent id " + std::to_string(id) + ": duplicate id");
    seen[id - 1] = true;
    const std::string where = "agent " + std::to_string(id);

    const Vec2 position{num_field(entry, "x", where), num_field(entry, "y", where)};
    const Vec2 velocity{num_field(entry, "vx", where), num_field(entry, "vy", where)};
    const double box_side = num_field(entry, "box_side", where);
    if (!(box_side > 0.0)) fail(where + ": box_side must be > 0");
    scenario.agents[id - 1] = AgentInit(position, velocity, box_side);

    const auto action_it = entry.find("action");
    if (action_it == entry.end()) fail(where + ": missing field 'action'");
    require_object(*action_it, where + ".action");
    check_keys(*action_it, where + ".action", {"a", "theta"});
    const double a = num_field(*action_it, "a", where + ".action");
    const double theta = num_field(*action_it, "theta", where + ".action");
    if (a < 0.0) fail(where + ": action magnitude must be >= 0");
    if (a > scenario.a_max) fail(where + ": action magnitude exceeds a_max");
    if (theta < -std::numbers::pi || theta > std::numbers::pi)
      fail(where + ": action direction must be in [-pi, pi] radians");
    joint.actions[id - 1] = Action(a, theta);
  }

  const auto obstacles_it = doc.find("obstacles");
  if (obstacles_it != doc.end()) {
    if (!obstacles_it->is_array()) fail("obstacles: expected an array");
    for (size_t o = 0; o < obstacles_it->size(); ++o) {
      const auto& outline = (*obstacles_it)[o];
      const std::string where = "obstacle " + std::to_string(o + 1);
      if (!outline.is_array() || outline.empty())
        fail(where + ": expected a non-empty vertex array");
      std::vector<Vec2> points;
      points.reserve(outline.size());
      for (size_t v = 0; v < outline.size(); ++v)
        points.push_back(vec2_entry(outline[v], where + " vertex " + std::to_string(v + 1)));
      const ConvexPolygon hull = convex_hull(points);
      for (size_t v = 0; v < points.size(); ++v)
        if (strictly_inside(hull, points[v]))
          fail(where + ": not convex (vertex " + std::to_string(v + 1) +
               " lies strictly inside the outline's hull)");
      scenario.obstacles.push_back(hull);
    }
  }

  LoadedScenario loaded{std::move(scenario), std::move(joint), MdrPolicy{}};

  const auto mdr_it = doc.find("mdr");
  if (mdr_it != doc.end()) {
    require_object(*mdr_it, "mdr");
    check_keys(*mdr_it, "mdr", {"policy", "social_force"});
    const auto policy_it = mdr_it->find("policy");
    if (policy_it == mdr_it->end()) fail("mdr: missing field 'policy'");
    if (!policy_it->is_string()) fail("mdr: field 'policy' must be a string");
    const std::string policy = policy_it->get<std::string>();
    if (policy == "zero") {
      if (mdr_it->contains("social_force"))
        fail("mdr: social_force block requires policy \"social_force\"");
      loaded.mdr.kind = MdrPolicyKind::zero;
    } else if (policy == "social_force") {
      loaded.mdr.kind = MdrPolicyKind::social_force;
      const auto sf = mdr_it->find("social_force");
      if (sf == mdr_it->end()) fail("mdr: policy \"social_force\" needs a social_force block");
      loaded.mdr.social_force = parse_social_force(*sf, k);
    } else {
      fail("mdr: policy must be \"zero\" or \"social_force\"");
    }
  }

  validate_scenario(loaded.scenario);
  validate_joint(loaded.scenario, loaded.joint);
  return loaded;
}

LoadedScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return load_scenario(buffer.str());
  } catch (const ScenarioError& e) {
    fail(path + ": " + e.what());
  }
}

std::string save_scenario(const LoadedScenario& loaded) {
  ordered_json doc;
  doc["schema_version"] = "1";

  doc["agents"] = ordered_json::array();
  for (size_t i = 0; i < loaded.scenario.agents.size(); ++i) {
    const AgentInit& agent = loaded.scenario.agents[i];
    ordered_json entry;
    entry["id"] = static_cast<int>(i + 1);
    entry["x"] = agent.position.x;
    entry["y"] = agent.position.y;
    entry["vx"] = agent.velocity.x;
    entry["vy"] = agent.velocity.y;
    entry["box_side"] = agent.box_side;
    entry["action"] = {{"a", loaded.joint.actions[i].magnitude},
                       {"theta", loaded.joint.actions[i].direction}};
    doc["agents"].push_back(std::move(entry));
  }

  doc["obstacles"] = ordered_json::array();
  for (const ConvexPolygon& obstacle : loaded.scenario.obstacles) {
    ordered_json outline = ordered_json::array();
    for (const Vec2& v : obstacle.vertices()) outline.push_back({v.x, v.y});
    doc["obstacles"].push_back(std::move(outline));
  }

  doc["params"] = {{"T", loaded.scenario.grid.horizon()},
                   {"N_t", loaded.scenario.grid.intervals()},
                   {"a_max", loaded.scenario.a_max},
                   {"N_m", loaded.scenario.n_mag},
                   {"N_d", loaded.scenario.n_dir},
                   {"epsilon", loaded.scenario.epsilon},
                   {"arc_refinement", loaded.scenario.arc_refinement}};

  ordered_json mdr;
  if (loaded.mdr.kind == MdrPolicyKind::zero) {
    mdr["policy"] = "zero";
  } else {
    mdr["policy"] = "social_force";
    const SocialForceConfig& c = loaded.mdr.social_force.value();
    ordered_json sf;
    sf["k"] = c.repulsion_k;
    sf["threshold_distance"] = c.threshold_distance;
    sf["buffer"] = c.buffer;
    sf["threshold_a"] = c.threshold_a;
    sf["k_v"] = c.velocity_gain;
    sf["restore_factor"] = c.restore_factor;
    sf["time_per_step"] = c.time_per_step;
    sf["threshold_velocity"] = c.threshold_velocity;
    sf["k_lane"] = c.lane_weight;
    sf["lane_kp"] = c.lane_kp;
    sf["lane_kd"] = c.lane_kd;
    sf["desired_velocity"] = ordered_json::array();
    for (const Vec2& v : c.desired_velocity) sf["desired_velocity"].push_back({v.x, v.y});
    if (!c.lanes.empty()) {
      sf["lanes"] = ordered_json::array();
      for (const auto& lane : c.lanes) {
        if (lane)
          sf["lanes"].push_back(lane->coeffs);
        else
          sf["lanes"].push_back(nullptr);
      }
    }
    mdr["social_force"] = std::move(sf);
  }
  doc["mdr"] = std::move(mdr);

  return doc.dump(2) + "\n";
}

std::string export_matrix(const FeARMatrix& matrix, bool audit) {
  std::string out;
  append_matrix_block(out, "actor", matrix, matrix.values);
  if (audit) {
    out += "\n";
    append_matrix_block(out, "raw", matrix, matrix.raw);
    out += "\n";
    append_matrix_block(out, "context_hv", matrix, matrix.context_hv);
    out += "\nactual_hv\\affected";
    for (size_t j = 1; j <= matrix.agent_count; ++j) out += "," + std::to_string(j);
    out += "\n-";
    for (size_t j = 0; j < matrix.agent_count; ++j)
      out += "," + format_value(matrix.actual_hv[j]);
    out += "\n";
  }
  return out;
}

std::string export_evaluations(std::span<const CandidateEvaluation> evals,
                               size_t agent_count) {
  std::string out = "a,theta";
  for (size_t j = 1; j <= agent_count; ++j) out += ",fear_" + std::to_string(j);
  out += ",collides,mean,min,max,count_net\n";
  for (const CandidateEvaluation& eval : evals) {
    out += format_value(eval.candidate.magnitude) + "," + format_value(eval.candidate.direction);
    for (size_t j = 0; j < agent_count; ++j) out += "," + format_value(eval.fear_row[j]);
    out += eval.ego_collides ? ",1" : ",0";
    out += "," + format_value(eval.mean) + "," + format_value(eval.min) + "," +
           format_value(eval.max) + "," + std::to_string(eval.count_net()) + "\n";
  }
  return out;
}

}  // namespace fear
