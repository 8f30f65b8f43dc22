#include "fear/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fear/collision.hpp"
#include "fear/feasibility.hpp"
#include "fear/fear_metric.hpp"
#include "fear/mdr.hpp"

namespace fear {
namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // never print -0.000
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// World-to-view mapping only flips y; the viewBox does the rest.
double vy(double y) { return -y; }

struct Bounds {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  bool empty = true;

  void add(const Vec2& p) {
    if (empty) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      empty = false;
      return;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
};

std::string svg_open(const Bounds& world, double margin) {
  const double x0 = world.min_x - margin;
  const double y0 = vy(world.max_y) - margin;
  const double w = world.max_x - world.min_x + 2.0 * margin;
  const double h = world.max_y - world.min_y + 2.0 * margin;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(x0) + " " +
                    fmt(y0) + " " + fmt(w) + " " + fmt(h) + "\" width=\"640\">\n";
  out +=
      "<style>\n"
      ".obstacle{fill:#b8b8b8;stroke:#711;stroke-width:0.08}\n"
      ".agent-box{fill:#cfe2ff;stroke:#123;stroke-width:0.08}\n"
      ".agent-box.collided{fill:#ffc9c9}\n"
      ".velocity-arrow{stroke:#123;stroke-width:0.1;fill:none}\n"
      ".agent-label{font-size:0.9px;font-family:monospace;fill:#123}\n"
      ".interval-hull{fill:none;stroke:#88a;stroke-width:0.04}\n"
      ".interval-hull.collided{stroke:#c44}\n"
      ".sector.feasible{fill:#9ad29a;stroke:#fff;stroke-width:0.3}\n"
      ".sector.infeasible{fill:#d68a8a;stroke:#fff;stroke-width:0.3}\n"
      ".cell{stroke:#fff;stroke-width:0.3}\n"
      ".collision-mark{stroke:#900;stroke-width:1.2;fill:none}\n"
      ".selected-action{fill:none;stroke:#000;stroke-width:1.2}\n"
      ".chart-label{font-size:6px;font-family:monospace;fill:#123}\n"
      "</style>\n";
  return out;
}

std::string polygon_element(const ConvexPolygon& poly, const std::string& css_class) {
  std::string out = "<polygon class=\"" + css_class + "\" points=\"";
  bool first = true;
  for (const Vec2& p : poly.vertices()) {
    if (!first) out += " ";
    out += fmt(p.x) + "," + fmt(vy(p.y));
    first = false;
  }
  return out + "\"/>\n";
}

void add_scene_bounds(Bounds& bounds, const Scenario& scenario, const JointAction& joint) {
  for (size_t i = 0; i < scenario.agent_count(); ++i) {
    const AgentInit& agent = scenario.agents[i];
    const double h = agent.box_side / 2.0;
    for (const Vec2& p : nominal_trajectory(agent, joint.actions[i], scenario.grid)) {
      bounds.add({p.x - h, p.y - h});
      bounds.add({p.x + h, p.y + h});
    }
    bounds.add(agent.position + agent.velocity);
  }
  for (const ConvexPolygon& obstacle : scenario.obstacles)
    for (const Vec2& p : obstacle.vertices()) bounds.add(p);
}

std::string scene_elements(const Scenario& scenario, const std::vector<bool>* collided) {
  std::string out;
  for (const ConvexPolygon& obstacle : scenario.obstacles)
    out += polygon_element(obstacle, "obstacle");
  for (size_t i = 0; i < scenario.agent_count(); ++i) {
    const AgentInit& agent = scenario.agents[i];
    const double h = agent.box_side / 2.0;
    std::string box_class = "agent-box";
    if (collided != nullptr && (*collided)[i]) box_class += " collided";
    out += "<rect class=\"" + box_class + "\" x=\"" + fmt(agent.position.x - h) + "\" y=\"" +
           fmt(vy(agent.position.y) - h) + "\" width=\"" + fmt(agent.box_side) +
           "\" height=\"" + fmt(agent.box_side) + "\"/>\n";

    // Arrow shaft spans one second of motion; the head is sized to the box.
    const Vec2 tip = agent.position + agent.velocity;
    std::string d = "M " + fmt(agent.position.x) + " " + fmt(vy(agent.position.y)) + " L " +
                    fmt(tip.x) + " " + fmt(vy(tip.y));
    const double speed = agent.velocity.norm();
    if (speed > 1e-12) {
      const Vec2 dir = agent.velocity * (1.0 / speed);
      const Vec2 ortho{-dir.y, dir.x};
      const double head = std::min(0.35 * agent.box_side, 0.5 * speed);
      const Vec2 left = tip - dir * head + ortho * (head * 0.6);
      const Vec2 right = tip - dir * head - ortho * (head * 0.6);
      d += " M " + fmt(left.x) + " " + fmt(vy(left.y)) + " L " + fmt(tip.x) + " " +
           fmt(vy(tip.y)) + " L " + fmt(right.x) + " " + fmt(vy(right.y));
    }
    out += "<path class=\"velocity-arrow\" d=\"" + d + "\"/>\n";
    out += "<text class=\"agent-label\" x=\"" + fmt(agent.position.x + h * 0.2) + "\" y=\"" +
           fmt(vy(agent.position.y) + h * 0.7) + "\">" + std::to_string(i + 1) + "</text>\n";
  }
  return out;
}

// Annular sector between radii r0 < r1 over math angles [a0, a1], drawn in
// view coordinates (y flipped, so increasing angle sweeps counter-clockwise
// on screen, sweep flag 0 outward).
std::string sector_path(double r0, double r1, double a0, double a1,
                        const std::string& css_class, const std::string& style) {
  const Vec2 o0{r1 * std::cos(a0), r1 * std::sin(a0)};
  const Vec2 o1{r1 * std::cos(a1), r1 * std::sin(a1)};
  std::string d = "M " + fmt(o0.x) + " " + fmt(vy(o0.y)) + " A " + fmt(r1) + " " + fmt(r1) +
                  " 0 0 0 " + fmt(o1.x) + " " + fmt(vy(o1.y));
  if (r0 > 0.0) {
    const Vec2 i0{r0 * std::cos(a0), r0 * std::sin(a0)};
    const Vec2 i1{r0 * std::cos(a1), r0 * std::sin(a1)};
    d += " L " + fmt(i1.x) + " " + fmt(vy(i1.y)) + " A " + fmt(r0) + " " + fmt(r0) +
         " 0 0 1 " + fmt(i0.x) + " " + fmt(vy(i0.y)) + " Z";
  } else {
    d += " L 0 0 Z";
  }
  std::string out = "<path class=\"" + css_class + "\" d=\"" + d + "\"";
  if (!style.empty()) out += " style=\"" + style + "\"";
  return out + "/>\n";
}

std::string svg_close() { return "</svg>\n"; }

}  // namespace

std::string render_scene(const Scenario& scenario, const JointAction& joint) {
  validate_scenario(scenario);
  validate_joint(scenario, joint);
  Bounds bounds;
  add_scene_bounds(bounds, scenario, joint);
  std::string out = svg_open(bounds, 2.0);
  out += scene_elements(scenario, nullptr);
  return out + svg_close();
}

std::string render_trajectories(const Scenario& scenario, const JointAction& joint) {
  const ResolvedTrajectories resolved = resolve_trajectories(scenario, joint);
  Bounds bounds;
  add_scene_bounds(bounds, scenario, joint);
  std::string out = svg_open(bounds, 2.0);
  for (size_t i = 0; i < scenario.agent_count(); ++i) {
    const std::string css =
        resolved.collided[i] ? "interval-hull collided" : "interval-hull";
    for (const ConvexPolygon& hull : resolved.interval_hulls[i])
      out += polygon_element(hull, css);
  }
  std::vector<bool> collided = resolved.collided;
  out += scene_elements(scenario, &collided);
  return out + svg_close();
}

std::string render_feasibility(const Scenario& scenario, const JointAction& joint,
                               size_t affected) {
  const FeasibilityGrid grid = feasible_hypervolume(scenario, joint, affected);
  const double radius = 100.0;
  Bounds bounds;
  bounds.add({-radius, -radius});
  bounds.add({radius, radius});
  std::string out = svg_open(bounds, 12.0);
  const double dr = radius / grid.n_mag;
  const double da = 2.0 * std::numbers::pi / grid.n_dir;
  for (int m = 1; m <= grid.n_mag; ++m) {
    for (int d = 1; d <= grid.n_dir; ++d) {
      const std::string css =
          grid.mark(m, d) ? "sector feasible" : "sector infeasible";
      out += sector_path((m - 1) * dr, m * dr, -std::numbers::pi + (d - 1) * da,
                         -std::numbers::pi + d * da, css, "");
    }
  }
  out += "<text class=\"chart-label\" x=\"" + fmt(-radius) + "\" y=\"" +
         fmt(radius + 10.0) + "\">agent " + std::to_string(affected + 1) +
         " feasible hypervolume " + fmt(grid.hypervolume) + "</text>\n";
  return out + svg_close();
}

std::string render_plan(const Scenario& scenario, const JointAction& predicted,
                        const JointAction& mdr, size_t ego,
                        const AggregationPolicy& policy) {
  const std::vector<Action> grid =
      candidate_grid(scenario.a_max, scenario.n_mag, scenario.n_dir);
  const std::vector<CandidateEvaluation> evals =
      evaluate_candidates(scenario, predicted, mdr, ego, grid);

  std::vector<double> scores(evals.size());
  double score_span = 0.0;
  for (size_t c = 0; c < evals.size(); ++c) {
    switch (policy.kind) {
      case AggregateKind::mean: scores[c] = evals[c].mean; break;
      case AggregateKind::max: scores[c] = evals[c].max; break;
      case AggregateKind::min: scores[c] = evals[c].min; break;
      case AggregateKind::count_net:
        scores[c] = static_cast<double>(evals[c].count_net());
        break;
    }
    score_span = std::max(score_span, std::abs(scores[c]));
  }

  std::optional<size_t> selected;
  try {
    selected = select_action(evals, policy).selected_index;
  } catch (const NoFeasibleCandidateError&) {
    // Every candidate collides; the chart still shows the crosses.
  }

  const double radius = 100.0;
  Bounds bounds;
  bounds.add({-radius, -radius});
  bounds.add({radius, radius});
  std::string out = svg_open(bounds, 12.0);
  const double dr = radius / scenario.n_mag;
  const double da = 2.0 * std::numbers::pi / scenario.n_dir;

  for (size_t c = 0; c < evals.size(); ++c) {
    const int m = static_cast<int>(c) / scenario.n_dir + 1;
    const int d = static_cast<int>(c) % scenario.n_dir + 1;
    // Diverging shade: assertive scores toward red, courteous toward blue.
    const double unit = score_span > 0.0 ? scores[c] / score_span : 0.0;
    const int red = static_cast<int>(std::lround(235.0 - std::max(0.0, -unit) * 135.0));
    const int green = static_cast<int>(std::lround(235.0 - std::abs(unit) * 135.0));
    const int blue = static_cast<int>(std::lround(235.0 - std::max(0.0, unit) * 135.0));
    const std::string style = "fill:rgb(" + std::to_string(red) + "," +
                              std::to_string(green) + "," + std::to_string(blue) + ")";
    out += sector_path((m - 1) * dr, m * dr, -std::numbers::pi + (d - 1) * da,
                       -std::numbers::pi + d * da, "cell", style);
  }

  for (size_t c = 0; c < evals.size(); ++c) {
    const int m = static_cast<int>(c) / scenario.n_dir + 1;
    const int d = static_cast<int>(c) % scenario.n_dir + 1;
    const double r = (m - 0.5) * dr;
    const double a = -std::numbers::pi + (d - 0.5) * da;
    const Vec2 center{r * std::cos(a), r * std::sin(a)};
    const double s = 0.3 * dr;
    if (evals[c].ego_collides) {
      out += "<path class=\"collision-mark\" d=\"M " + fmt(center.x - s) + " " +
             fmt(vy(center.y) - s) + " L " + fmt(center.x + s) + " " + fmt(vy(center.y) + s) +
             " M " + fmt(center.x - s) + " " + fmt(vy(center.y) + s) + " L " +
             fmt(center.x + s) + " " + fmt(vy(center.y) - s) + "\"/>\n";
    }
    if (selected && *selected == c) {
      out += "<circle class=\"selected-action\" cx=\"" + fmt(center.x) + "\" cy=\"" +
             fmt(vy(center.y)) + "\" r=\"" + fmt(s) + "\"/>\n";
    }
  }

  std::string label = "ego " + std::to_string(ego + 1);
  if (selected) {
    label += " selected a=" + fmt(evals[*selected].candidate.magnitude) +
             " theta=" + fmt(evals[*selected].candidate.direction);
  } else {
    label += " no collision-free candidate";
  }
  out += "<text class=\"chart-label\" x=\"" + fmt(-radius) + "\" y=\"" +
         fmt(radius + 10.0) + "\">" + label + "</text>\n";
  return out + svg_close();
}

}  // namespace fear
