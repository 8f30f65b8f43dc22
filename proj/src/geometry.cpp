#include "fear/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fear {
namespace {

double cross3(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a - o).cross(b - o);
}

void append_axis(std::vector<Vec2>& axes, const Vec2& raw) {
  const double len = raw.norm();
  if (len <= kGeomTol) return;
  axes.push_back(raw * (1.0 / len));
}

// Candidate separating axes: edge normals, plus edge directions so collinear
// but disjoint segments do not report a false overlap. Degenerate polygons
// (points) contribute none.
void collect_axes(const ConvexPolygon& poly, std::vector<Vec2>& axes) {
  const auto& v = poly.vertices();
  if (v.size() < 2) return;
  const size_t edge_count = v.size() == 2 ? 1 : v.size();
  for (size_t i = 0; i < edge_count; ++i) {
    const Vec2 edge = v[(i + 1) % v.size()] - v[i];
    append_axis(axes, Vec2(-edge.y, edge.x));
    if (v.size() == 2) append_axis(axes, edge);
  }
}

std::pair<double, double> project(const ConvexPolygon& poly, const Vec2& axis) {
  double lo = poly.vertices().front().dot(axis);
  double hi = lo;
  for (const Vec2& v : poly.vertices()) {
    const double p = v.dot(axis);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return {lo, hi};
}

}  // namespace

Vec2::Vec2(double x_, double y_) : x(x_), y(y_) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw std::invalid_argument("Vec2: non-finite coordinate");
}

double Vec2::norm() const { return std::sqrt(norm_sq()); }

ConvexPolygon ConvexPolygon::translated(const Vec2& offset) const {
  std::vector<Vec2> moved;
  moved.reserve(verts_.size());
  for (const Vec2& v : verts_) moved.push_back(v + offset);
  return ConvexPolygon(std::move(moved));
}

ConvexPolygon convex_hull(std::span<const Vec2> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty point set");

  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });

  std::vector<Vec2> uniq;
  uniq.reserve(pts.size());
  for (const Vec2& p : pts) {
    if (!uniq.empty() && std::abs(p.x - uniq.back().x) <= kGeomTol &&
        std::abs(p.y - uniq.back().y) <= kGeomTol)
      continue;
    uniq.push_back(p);
  }

  if (uniq.size() < 3) return ConvexPolygon(std::move(uniq));

  // Monotone chain; popping on cross <= tol drops collinear boundary points,
  // so the hull is strictly convex. Output is counter-clockwise starting at
  // the lexicographically smallest vertex.
  std::vector<Vec2> hull(2 * uniq.size());
  size_t n = 0;
  for (const Vec2& p : uniq) {
    while (n >= 2 && cross3(hull[n - 2], hull[n - 1], p) <= kGeomTol) --n;
    hull[n++] = p;
  }
  const size_t lower_size = n + 1;
  for (auto it = uniq.rbegin() + 1; it != uniq.rend(); ++it) {
    while (n >= lower_size && cross3(hull[n - 2], hull[n - 1], *it) <= kGeomTol) --n;
    hull[n++] = *it;
  }
  hull.resize(n - 1);
  return ConvexPolygon(std::move(hull));
}

bool polygons_intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.vertices().empty() || b.vertices().empty())
    throw std::invalid_argument("polygons_intersect: empty polygon");

  std::vector<Vec2> axes;
  axes.reserve(a.vertices().size() + b.vertices().size() + 2);
  collect_axes(a, axes);
  collect_axes(b, axes);

  if (axes.empty()) {
    // Point versus point.
    const Vec2 d = a.vertices().front() - b.vertices().front();
    return d.norm() <= kGeomTol;
  }

  for (const Vec2& axis : axes) {
    const auto [a_lo, a_hi] = project(a, axis);
    const auto [b_lo, b_hi] = project(b, axis);
    if (a_lo > b_hi + kGeomTol || b_lo > a_hi + kGeomTol) return false;
  }
  return true;
}

ConvexPolygon bounding_box(const Vec2& center, double side) {
  if (!(side > 0.0)) throw std::invalid_argument("bounding_box: side must be > 0");
  const double h = side / 2.0;
  const Vec2 corners[4] = {{center.x - h, center.y - h},
                           {center.x + h, center.y - h},
                           {center.x + h, center.y + h},
                           {center.x - h, center.y + h}};
  return convex_hull(corners);
}

}  // namespace fear
