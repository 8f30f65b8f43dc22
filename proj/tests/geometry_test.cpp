#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "fear/geometry.hpp"

using fear::ConvexPolygon;
using fear::convex_hull;
using fear::kGeomTol;
using fear::polygons_intersect;
using fear::Vec2;

namespace {

// Signed distance of p from the line through a->b: > 0 left of the edge.
double edge_side(const Vec2& a, const Vec2& b, const Vec2& p) {
  return (b - a).cross(p - a);
}

// Independent point-in-convex-polygon test for counter-clockwise vertices.
// Accepts p iff it is no more than `slack` outside the region, so slack > 0
// is lenient and slack < 0 demands the point be that deep in the interior.
bool inside_ccw(const std::vector<Vec2>& verts, const Vec2& p, double slack) {
  if (verts.size() == 1) return (p - verts[0]).norm() <= slack;
  if (verts.size() == 2) {
    const Vec2 d = verts[1] - verts[0];
    const double len = d.norm();
    const double along = (p - verts[0]).dot(d) / len;
    const double off = std::abs(edge_side(verts[0], verts[1], p)) / len;
    return off <= slack && along >= -slack && along <= len + slack;
  }
  for (size_t i = 0; i < verts.size(); ++i) {
    const Vec2& a = verts[i];
    const Vec2& b = verts[(i + 1) % verts.size()];
    const double len = (b - a).norm();
    if (edge_side(a, b, p) < -slack * len) return false;
  }
  return true;
}

std::vector<Vec2> random_points(std::mt19937& rng, int n, double scale) {
  std::uniform_real_distribution<double> coord(-scale, scale);
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
  return pts;
}

bool same_vertices(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.vertices().size() != b.vertices().size()) return false;
  for (size_t i = 0; i < a.vertices().size(); ++i) {
    if (a.vertices()[i].x != b.vertices()[i].x) return false;
    if (a.vertices()[i].y != b.vertices()[i].y) return false;
  }
  return true;
}

ConvexPolygon regular_polygon(const Vec2& center, double radius, int n, double phase) {
  std::vector<Vec2> pts;
  for (int i = 0; i < n; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * i / n;
    pts.push_back(center + Vec2{radius * std::cos(a), radius * std::sin(a)});
  }
  return convex_hull(pts);
}

}  // namespace

TEST_CASE("hull of fixed shapes") {
  SUBCASE("unit square with interior and duplicate points") {
    const std::vector<Vec2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5},
                                   {0.25, 0.75}, {1, 1}, {0, 0}};
    const ConvexPolygon hull = convex_hull(pts);
    REQUIRE(hull.vertices().size() == 4);
    CHECK(hull.vertices()[0].x == 0.0);  // lexicographic start
    CHECK(hull.vertices()[0].y == 0.0);
    CHECK(hull.vertices()[1].x == 1.0);  // counter-clockwise
    CHECK(hull.vertices()[1].y == 0.0);
    CHECK(!hull.degenerate());
  }
  SUBCASE("collinear points collapse to a segment") {
    const std::vector<Vec2> pts = {{0, 0}, {2, 2}, {1, 1}, {0.5, 0.5}};
    const ConvexPolygon hull = convex_hull(pts);
    REQUIRE(hull.vertices().size() == 2);
    CHECK(hull.degenerate());
    CHECK(hull.vertices()[0].x == 0.0);
    CHECK(hull.vertices()[1].x == 2.0);
  }
  SUBCASE("single point") {
    const ConvexPolygon hull = convex_hull(std::vector<Vec2>{{3, -1}});
    REQUIRE(hull.vertices().size() == 1);
    CHECK(hull.degenerate());
  }
  SUBCASE("empty input throws") {
    CHECK_THROWS_AS(convex_hull(std::vector<Vec2>{}), std::invalid_argument);
  }
  SUBCASE("midpoint on an edge is dropped") {
    const std::vector<Vec2> pts = {{0, 0}, {2, 0}, {1, 0}, {1, 2}};
    CHECK(convex_hull(pts).vertices().size() == 3);
  }
}

TEST_CASE("hull properties on random point sets") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + int(rng() % 40);
    const std::vector<Vec2> pts = random_points(rng, n, 10.0);
    const ConvexPolygon hull = convex_hull(pts);
    const std::vector<Vec2>& verts = hull.vertices();

    // Every hull vertex is one of the input points.
    for (const Vec2& v : verts) {
      const bool found = std::any_of(pts.begin(), pts.end(), [&](const Vec2& p) {
        return p.x == v.x && p.y == v.y;
      });
      CHECK(found);
    }

    // Strict convexity and counter-clockwise order: every consecutive triple
    // turns left by a clear margin.
    if (verts.size() >= 3) {
      for (size_t i = 0; i < verts.size(); ++i) {
        const Vec2& a = verts[i];
        const Vec2& b = verts[(i + 1) % verts.size()];
        const Vec2& c = verts[(i + 2) % verts.size()];
        CHECK((b - a).cross(c - b) > kGeomTol);
      }
    }

    // Containment: every input point lies inside or on the hull.
    for (const Vec2& p : pts) CHECK(inside_ccw(verts, p, 1e-7));

    // Canonical start vertex: lexicographically smallest.
    for (const Vec2& v : verts) {
      const bool not_smaller = v.x > verts[0].x - kGeomTol &&
                               (v.x > verts[0].x + kGeomTol || v.y >= verts[0].y);
      CHECK(not_smaller);
    }

    // Idempotence is exact, not approximate.
    CHECK(same_vertices(hull, convex_hull(verts)));

    // Translation equivariance.
    const Vec2 shift{3.25, -7.5};
    std::vector<Vec2> shifted = pts;
    for (Vec2& p : shifted) p += shift;
    const ConvexPolygon hull_shifted = convex_hull(shifted);
    REQUIRE(hull_shifted.vertices().size() == verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
      CHECK(hull_shifted.vertices()[i].x == doctest::Approx(verts[i].x + shift.x).epsilon(1e-12));
      CHECK(hull_shifted.vertices()[i].y == doctest::Approx(verts[i].y + shift.y).epsilon(1e-12));
    }
    CHECK(same_vertices(hull.translated(shift), hull_shifted));
  }
}

TEST_CASE("intersection of fixed shapes") {
  const ConvexPolygon sq0 = fear::bounding_box({0, 0}, 2.0);
  SUBCASE("overlap") { CHECK(polygons_intersect(sq0, fear::bounding_box({1, 1}, 2.0))); }
  SUBCASE("separated") { CHECK(!polygons_intersect(sq0, fear::bounding_box({3, 0}, 2.0))); }
  SUBCASE("touching edge counts") {
    CHECK(polygons_intersect(sq0, fear::bounding_box({2, 0}, 2.0)));
  }
  SUBCASE("touching corner counts") {
    CHECK(polygons_intersect(sq0, fear::bounding_box({2, 2}, 2.0)));
  }
  SUBCASE("just beyond touching") {
    CHECK(!polygons_intersect(sq0, fear::bounding_box({2.0001, 0}, 2.0)));
  }
  SUBCASE("cross shape: overlap without any vertex containment") {
    const ConvexPolygon tall = convex_hull(
        std::vector<Vec2>{{-0.5, -3}, {0.5, -3}, {0.5, 3}, {-0.5, 3}});
    const ConvexPolygon wide = convex_hull(
        std::vector<Vec2>{{-3, -0.5}, {3, -0.5}, {3, 0.5}, {-3, 0.5}});
    CHECK(polygons_intersect(tall, wide));
  }
  SUBCASE("self intersection") { CHECK(polygons_intersect(sq0, sq0)); }
}

TEST_CASE("intersection with degenerate polygons") {
  const ConvexPolygon sq = fear::bounding_box({0, 0}, 2.0);
  const ConvexPolygon seg_in = convex_hull(std::vector<Vec2>{{-3, 0}, {3, 0}});
  const ConvexPolygon seg_out = convex_hull(std::vector<Vec2>{{-3, 2}, {3, 2.5}});
  const ConvexPolygon seg_touch = convex_hull(std::vector<Vec2>{{1, -5}, {1, 5}});
  const ConvexPolygon pt_in = convex_hull(std::vector<Vec2>{{0.5, 0.5}});
  const ConvexPolygon pt_out = convex_hull(std::vector<Vec2>{{1.5, 0}});
  const ConvexPolygon pt_corner = convex_hull(std::vector<Vec2>{{1, 1}});

  CHECK(polygons_intersect(sq, seg_in));
  CHECK(polygons_intersect(seg_in, sq));
  CHECK(!polygons_intersect(sq, seg_out));
  CHECK(polygons_intersect(sq, seg_touch));  // runs along the boundary
  CHECK(polygons_intersect(sq, pt_in));
  CHECK(!polygons_intersect(sq, pt_out));
  CHECK(polygons_intersect(sq, pt_corner));

  // Segment-segment and point-point pairs.
  const ConvexPolygon seg_a = convex_hull(std::vector<Vec2>{{0, 0}, {2, 2}});
  const ConvexPolygon seg_b = convex_hull(std::vector<Vec2>{{0, 2}, {2, 0}});
  const ConvexPolygon seg_c = convex_hull(std::vector<Vec2>{{3, 0}, {5, 0}});
  CHECK(polygons_intersect(seg_a, seg_b));
  CHECK(!polygons_intersect(seg_a, seg_c));
  CHECK(polygons_intersect(pt_in, pt_in));
  CHECK(!polygons_intersect(pt_in, pt_out));
  // Parallel segments offset sideways: the direction axis alone cannot
  // separate them, the normal must.
  const ConvexPolygon par_a = convex_hull(std::vector<Vec2>{{0, 0}, {4, 0}});
  const ConvexPolygon par_b = convex_hull(std::vector<Vec2>{{0, 1}, {4, 1}});
  CHECK(!polygons_intersect(par_a, par_b));
  // Collinear segments with a gap: only the direction axis separates them.
  const ConvexPolygon col_a = convex_hull(std::vector<Vec2>{{0, 0}, {1, 0}});
  const ConvexPolygon col_b = convex_hull(std::vector<Vec2>{{2, 0}, {3, 0}});
  CHECK(!polygons_intersect(col_a, col_b));
}

TEST_CASE("intersection agrees with dense sampling on random hull pairs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> offset(-4.0, 4.0);
  int robust_trials = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const ConvexPolygon a = convex_hull(random_points(rng, 3 + int(rng() % 8), 2.0));
    Vec2 shift{offset(rng), offset(rng)};
    std::vector<Vec2> pts_b = random_points(rng, 3 + int(rng() % 8), 2.0);
    for (Vec2& p : pts_b) p += shift;
    const ConvexPolygon b = convex_hull(pts_b);
    if (a.degenerate() || b.degenerate()) continue;

    // Sample a fine grid over the union bounding box. The oracle is only
    // trusted when it is robust: some sample clearly inside both polygons, or
    // no sample anywhere near both -- near-tangent cases below the grid pitch
    // are skipped.
    double lo_x = 1e9, lo_y = 1e9, hi_x = -1e9, hi_y = -1e9;
    for (const ConvexPolygon* poly : {&a, &b})
      for (const Vec2& p : poly->vertices()) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
      }
    const int grid = 160;
    const double margin = 2.5 * std::max(hi_x - lo_x, hi_y - lo_y) / grid;
    bool clearly_both = false, weakly_both = false;
    for (int ix = 0; ix <= grid && !clearly_both; ++ix)
      for (int iy = 0; iy <= grid; ++iy) {
        const Vec2 p{lo_x + (hi_x - lo_x) * ix / grid, lo_y + (hi_y - lo_y) * iy / grid};
        if (inside_ccw(a.vertices(), p, margin) && inside_ccw(b.vertices(), p, margin))
          weakly_both = true;
        if (inside_ccw(a.vertices(), p, -margin) && inside_ccw(b.vertices(), p, -margin)) {
          clearly_both = true;
          break;
        }
      }
    const bool got = polygons_intersect(a, b);
    CHECK(got == polygons_intersect(b, a));  // symmetry always
    if (clearly_both) {
      ++robust_trials;
      CHECK(got);
    } else if (!weakly_both) {
      ++robust_trials;
      CHECK(!got);
    }
  }
  CHECK(robust_trials > 200);  // the margin filter must not eat the test
}

TEST_CASE("rotated hexagon pairs around the touching distance") {
  // Two regular hexagons of circumradius 1 approach along x; flat sides face
  // each other (apothem sqrt(3)/2), so contact happens at distance sqrt(3).
  const double contact = std::sqrt(3.0);
  const ConvexPolygon left = regular_polygon({0, 0}, 1.0, 6, std::numbers::pi / 6);
  for (double gap : {-0.05, -0.001, 0.001, 0.05}) {
    const ConvexPolygon right = regular_polygon({contact + gap, 0}, 1.0, 6, std::numbers::pi / 6);
    CHECK(polygons_intersect(left, right) == (gap < 0));
  }
}

TEST_CASE("vec2 rejects non-finite coordinates") {
  CHECK_THROWS_AS(Vec2(std::nan(""), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Vec2(0.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(fear::bounding_box({0, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fear::bounding_box({0, 0}, -1.0), std::invalid_argument);
}
