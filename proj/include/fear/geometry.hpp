#pragma once

#include <span>
#include <vector>

namespace fear {

// Absolute tolerance for collinearity tests, point deduplication and
// separating-axis gaps. Scene coordinates are metres in single-digit to
// low-hundreds range, so 1e-9 is far below any physical feature size.
inline constexpr double kGeomTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_);  // rejects NaN / infinity

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm_sq() const { return x * x + y * y; }
  double norm() const;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Convex region given by its hull vertices in counter-clockwise order,
// starting from the lexicographically smallest vertex (lowest x, then lowest
// y). Vertex loops with fewer than three distinct points are kept as
// degenerate polygons (a point or a segment) so callers can still intersect
// them.
class ConvexPolygon {
 public:
  const std::vector<Vec2>& vertices() const { return verts_; }
  bool degenerate() const { return verts_.size() < 3; }

  ConvexPolygon translated(const Vec2& offset) const;

 private:
  explicit ConvexPolygon(std::vector<Vec2> verts) : verts_(std::move(verts)) {}

  std::vector<Vec2> verts_;

  friend ConvexPolygon convex_hull(std::span<const Vec2> points);
};

// Canonical convex hull of a non-empty point set. Duplicate points (within
// kGeomTol per coordinate) and collinear boundary points are dropped, so the
// result is strictly convex and hull(hull(P).vertices()) == hull(P) exactly.
// Throws std::invalid_argument on an empty point set.
ConvexPolygon convex_hull(std::span<const Vec2> points);

// True iff the closed regions overlap; touching boundaries count as an
// intersection. Degenerate polygons are treated as closed segments / points.
bool polygons_intersect(const ConvexPolygon& a, const ConvexPolygon& b);

// Axis-aligned square of the given side length centred on `center`.
// Throws std::invalid_argument unless side > 0.
ConvexPolygon bounding_box(const Vec2& center, double side);

}  // namespace fear
