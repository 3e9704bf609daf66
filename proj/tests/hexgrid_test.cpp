#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hexlb/hexgrid.hpp"

using namespace hexlb;

namespace {

constexpr double kS3 = 1.7320508075688772;

double triangle_area(const std::array<Point, 3>& v) {
  return 0.5 * std::abs((v[1].x - v[0].x) * (v[2].y - v[0].y) -
                        (v[2].x - v[0].x) * (v[1].y - v[0].y));
}

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::set<std::pair<int, int>> scope_key(const std::vector<TriangleId>& ts) {
  std::set<std::pair<int, int>> out;
  for (TriangleId t : ts) out.insert({t.hex, t.local});
  return out;
}

}  // namespace

TEST_CASE("single hexagon layout") {
  const HexLayout layout = build_layout({{0.0, 0.0}}, 1.0);
  CHECK(layout.hex_count() == 1);
  CHECK(layout.triangle_count() == 24);
  CHECK(layout.neighbors(0).empty());
  const ScopeSet s = scopes(layout, 0);
  CHECK(s.scope0.empty());
  CHECK(s.scope1.empty());
}

TEST_CASE("build_layout rejects bad input") {
  CHECK_THROWS_AS(build_layout({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_layout({{0, 0}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_layout({{0, 0}, {1.0, 0.0}}, 1.0), OverlapError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(build_layout({{nan, 0}}, 1.0), std::invalid_argument);
  // same center twice
  CHECK_THROWS_AS(build_layout({{0, 0}, {0, 0}}, 1.0), OverlapError);
}

TEST_CASE("wnl1 preset geometry") {
  const HexLayout layout = preset_wnl1();
  REQUIRE(layout.hex_count() == 3);
  for (int h = 0; h < 3; ++h) CHECK(layout.neighbors(h).size() == 2);
  CHECK(layout.neighbors(0) == std::vector<int>{1, 2});
  // pairwise spacing sqrt(3)*a
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(dist(layout.center(i), layout.center(j)) ==
            doctest::Approx(kS3).epsilon(1e-12));
}

TEST_CASE("wnl2 preset geometry") {
  const HexLayout layout = preset_wnl2();
  REQUIRE(layout.hex_count() == 7);
  CHECK(layout.neighbors(0) == std::vector<int>{1, 2, 3, 4, 5, 6});
  for (int h = 1; h < 7; ++h) CHECK(layout.neighbors(h).size() == 3);
}

TEST_CASE("neighbor relation is symmetric and irreflexive") {
  for (const HexLayout& layout : {preset_wnl1(), preset_wnl2()}) {
    for (int h = 0; h < layout.hex_count(); ++h) {
      for (int m : layout.neighbors(h)) {
        CHECK(m != h);
        const auto& back = layout.neighbors(m);
        CHECK(std::find(back.begin(), back.end(), h) != back.end());
      }
    }
  }
}

TEST_CASE("triangle centroids") {
  const HexLayout layout = build_layout({{0.0, 0.0}}, 1.0);

  SUBCASE("apex centroid is the vertex mean") {
    const TriangleId apex{0, 0};
    const auto& v = layout.triangle_vertices(apex);
    const Point c = layout.triangle_centroid(apex);
    CHECK(c.x == doctest::Approx((v[0].x + v[1].x + v[2].x) / 3));
    CHECK(c.y == doctest::Approx((v[0].y + v[1].y + v[2].y) / 3));
    // sub 0 touches the hexagon center
    CHECK(dist(v[0], layout.center(0)) == doctest::Approx(0.0));
  }

  SUBCASE("centroids of all 24 triangles average to the center") {
    double sx = 0, sy = 0;
    for (int local = 0; local < 24; ++local) {
      const Point c = layout.triangle_centroid({0, local});
      sx += c.x;
      sy += c.y;
    }
    CHECK(sx / 24 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sy / 24 == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("edge triangles sit farther out than the apex") {
    for (int w = 0; w < 6; ++w) {
      const double d0 = dist(layout.triangle_centroid({0, 4 * w}), {0, 0});
      const double d1 = dist(layout.triangle_centroid({0, 4 * w + 1}), {0, 0});
      const double d2 = dist(layout.triangle_centroid({0, 4 * w + 2}), {0, 0});
      CHECK(d1 > d0);
      CHECK(d2 > d0);
    }
  }
}

TEST_CASE("24 triangles tile the hexagon") {
  const HexLayout layout = build_layout({{2.5, -1.0}}, 1.0);
  double total = 0.0;
  for (int local = 0; local < 24; ++local)
    total += triangle_area(layout.triangle_vertices({0, local}));
  const double hex_area = 3.0 * kS3 / 2.0;
  CHECK(total == doctest::Approx(hex_area).epsilon(1e-9));
  // every triangle is equal-area (side a/2 equilateral)
  for (int local = 0; local < 24; ++local)
    CHECK(triangle_area(layout.triangle_vertices({0, local})) ==
          doctest::Approx(hex_area / 24).epsilon(1e-9));
}

TEST_CASE("scope sizes") {
  const HexLayout wnl1 = preset_wnl1();
  for (int h = 0; h < 3; ++h) {
    const ScopeSet s = scopes(wnl1, h);
    CHECK(s.scope0.size() == 4);  // 2 neighbors x 2 edge triangles
    CHECK(s.scope1.size() == 4);
  }
  const HexLayout wnl2 = preset_wnl2();
  CHECK(scopes(wnl2, 0).scope1.size() == 12);
  for (int h = 1; h < 7; ++h) CHECK(scopes(wnl2, h).scope1.size() == 6);
}

TEST_CASE("scope sets are ordered and disjoint from the owner") {
  const HexLayout layout = preset_wnl2();
  for (int h = 0; h < layout.hex_count(); ++h) {
    const ScopeSet s = scopes(layout, h);
    CHECK(std::is_sorted(s.scope1.begin(), s.scope1.end()));
    for (TriangleId t : s.scope1) CHECK(t.hex != h);
    for (TriangleId t : s.scope0) CHECK(t.hex == h);
  }
}

TEST_CASE("scope symmetry across shared edges") {
  for (const HexLayout& layout : {preset_wnl1(), preset_wnl2()}) {
    for (int b = 0; b < layout.hex_count(); ++b) {
      for (TriangleId t : scopes(layout, b).scope1) {
        const int m = t.hex;
        // t must be among m's own scope-0 triangles...
        const ScopeSet ms = scopes(layout, m);
        CHECK(std::find(ms.scope0.begin(), ms.scope0.end(), t) !=
              ms.scope0.end());
        // ...specifically on the wedge facing b.
        CHECK(t.wedge() == layout.facing_wedge(m, b));
      }
    }
  }
}

TEST_CASE("second ring admits the middle triangles") {
  const HexLayout layout = preset_wnl1();
  const ScopeSet s = scopes(layout, 0, true);
  CHECK(s.scope0.size() == 6);  // 2 neighbors x 3
  CHECK(s.scope1.size() == 6);
  int middles = 0;
  for (TriangleId t : s.scope1)
    if (t.sub() == 3) ++middles;
  CHECK(middles == 2);
}

TEST_CASE("translation leaves neighbor and scope sets unchanged") {
  const HexLayout base = preset_wnl2();
  std::vector<Point> moved;
  for (const Point& c : base.centers())
    moved.push_back({c.x + 12.375, c.y - 4.5});
  const HexLayout shifted = build_layout(moved, 1.0);
  for (int h = 0; h < base.hex_count(); ++h) {
    CHECK(base.neighbors(h) == shifted.neighbors(h));
    const ScopeSet a = scopes(base, h);
    const ScopeSet b = scopes(shifted, h);
    CHECK(scope_key(a.scope0) == scope_key(b.scope0));
    CHECK(scope_key(a.scope1) == scope_key(b.scope1));
  }
}

TEST_CASE("sixty-degree rotation preserves neighbors and scope structure") {
  const HexLayout base = preset_wnl2();
  const double c = 0.5, s = kS3 / 2;  // cos 60, sin 60
  std::vector<Point> rotated;
  for (const Point& p : base.centers())
    rotated.push_back({c * p.x - s * p.y, s * p.x + c * p.y});
  const HexLayout rot = build_layout(rotated, 1.0);
  for (int h = 0; h < base.hex_count(); ++h) {
    CHECK(base.neighbors(h) == rot.neighbors(h));
    CHECK(scopes(base, h).scope1.size() == scopes(rot, h).scope1.size());
  }
  // symmetry invariant still holds after rotation
  for (int b = 0; b < rot.hex_count(); ++b)
    for (TriangleId t : scopes(rot, b).scope1) {
      const ScopeSet ms = scopes(rot, t.hex);
      CHECK(std::find(ms.scope0.begin(), ms.scope0.end(), t) !=
            ms.scope0.end());
    }
}

TEST_CASE("index round trips and range checks") {
  const HexLayout layout = preset_wnl1();
  for (int g = 0; g < layout.triangle_count(); ++g)
    CHECK(layout.global_index(layout.triangle_at(g)) == g);
  CHECK_THROWS_AS(layout.neighbors(3), std::out_of_range);
  CHECK_THROWS_AS(layout.neighbors(-1), std::out_of_range);
  CHECK_THROWS_AS(layout.triangle_centroid({0, 24}), std::out_of_range);
  CHECK_THROWS_AS(layout.triangle_at(72), std::out_of_range);
  CHECK_THROWS_AS(scopes(layout, 5), std::out_of_range);
}
