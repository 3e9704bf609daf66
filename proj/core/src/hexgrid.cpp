#include "hexlb/hexgrid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace hexlb {

namespace {

constexpr double kS3 = 1.7320508075688772;  // sqrt(3)
constexpr double kAdjacencyTol = 1e-6;      // in units of side

// Hexagon vertices at multiples of 60 degrees, unit circumradius.
constexpr Point kVertexDir[kWedgesPerHex] = {
    {1.0, 0.0},  {0.5, kS3 / 2},  {-0.5, kS3 / 2},
    {-1.0, 0.0}, {-0.5, -kS3 / 2}, {0.5, -kS3 / 2},
};

// Neighbor directions at 30 + 60k degrees; wedge k's edge faces direction k.
constexpr Point kNeighborDir[kWedgesPerHex] = {
    {kS3 / 2, 0.5},  {0.0, 1.0},  {-kS3 / 2, 0.5},
    {-kS3 / 2, -0.5}, {0.0, -1.0}, {kS3 / 2, -0.5},
};

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Point midpoint(const Point& a, const Point& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

}  // namespace

const Point& HexLayout::center(int hex) const {
  check_hex(hex);
  return centers_[hex];
}

const std::vector<int>& HexLayout::neighbors(int hex) const {
  check_hex(hex);
  return neighbors_[hex];
}

int HexLayout::facing_wedge(int hex, int neighbor) const {
  check_hex(hex);
  check_hex(neighbor);
  const Point& c = centers_[hex];
  const Point& n = centers_[neighbor];
  const double tol = kAdjacencyTol * side_;
  for (int w = 0; w < kWedgesPerHex; ++w) {
    const Point expected{c.x + kS3 * side_ * kNeighborDir[w].x,
                         c.y + kS3 * side_ * kNeighborDir[w].y};
    if (dist(expected, n) <= tol) return w;
  }
  throw GeometryError("hexagons " + std::to_string(hex) + " and " +
                      std::to_string(neighbor) +
                      " do not share an edge-aligned border");
}

const std::array<Point, 3>& HexLayout::triangle_vertices(TriangleId t) const {
  check_triangle(t);
  return vertices_[t.hex * kTrianglesPerHex + t.local];
}

const Point& HexLayout::triangle_centroid(TriangleId t) const {
  check_triangle(t);
  return centroids_[t.hex * kTrianglesPerHex + t.local];
}

TriangleId HexLayout::triangle_at(int global_index) const {
  if (global_index < 0 || global_index >= triangle_count())
    throw std::out_of_range("triangle index " + std::to_string(global_index) +
                            " out of range");
  return {global_index / kTrianglesPerHex, global_index % kTrianglesPerHex};
}

void HexLayout::check_hex(int hex) const {
  if (hex < 0 || hex >= hex_count())
    throw std::out_of_range("hexagon index " + std::to_string(hex) +
                            " out of range");
}

void HexLayout::check_triangle(TriangleId t) const {
  check_hex(t.hex);
  if (t.local < 0 || t.local >= kTrianglesPerHex)
    throw std::out_of_range("triangle local index " + std::to_string(t.local) +
                            " out of range");
}

HexLayout build_layout(std::vector<Point> centers, double side) {
  if (centers.empty()) throw std::invalid_argument("no hexagon centers given");
  if (!(side > 0.0)) throw std::invalid_argument("side must be positive");
  for (const Point& c : centers)
    if (!std::isfinite(c.x) || !std::isfinite(c.y))
      throw std::invalid_argument("non-finite center coordinate");

  const int n = static_cast<int>(centers.size());
  const double spacing = kS3 * side;
  const double tol = kAdjacencyTol * side;

  HexLayout layout;
  layout.side_ = side;
  layout.centers_ = std::move(centers);
  layout.neighbors_.resize(n);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = dist(layout.centers_[i], layout.centers_[j]);
      if (d < spacing - tol)
        throw OverlapError("hexagons " + std::to_string(i) + " and " +
                           std::to_string(j) + " overlap (center distance " +
                           std::to_string(d) + ")");
      if (std::abs(d - spacing) <= tol) {
        layout.neighbors_[i].push_back(j);
        layout.neighbors_[j].push_back(i);
      }
    }
  }
  // i<j insertion order keeps each list sorted ascending already.

  layout.vertices_.reserve(static_cast<std::size_t>(n) * kTrianglesPerHex);
  layout.centroids_.reserve(static_cast<std::size_t>(n) * kTrianglesPerHex);
  for (int h = 0; h < n; ++h) {
    const Point& c = layout.centers_[h];
    for (int w = 0; w < kWedgesPerHex; ++w) {
      const Point va{c.x + side * kVertexDir[w].x,
                     c.y + side * kVertexDir[w].y};
      const Point vb{c.x + side * kVertexDir[(w + 1) % kWedgesPerHex].x,
                     c.y + side * kVertexDir[(w + 1) % kWedgesPerHex].y};
      const Point ma = midpoint(c, va);   // toward vertex w
      const Point mb = midpoint(c, vb);   // toward vertex w+1
      const Point me = midpoint(va, vb);  // hexagon edge midpoint
      const std::array<std::array<Point, 3>, kSubsPerWedge> subs = {{
          {c, ma, mb},    // sub 0: apex at the center
          {ma, va, me},   // sub 1: edge triangle at vertex w
          {mb, me, vb},   // sub 2: edge triangle at vertex w+1
          {ma, me, mb},   // sub 3: inverted middle triangle
      }};
      for (const auto& tri : subs) {
        layout.vertices_.push_back(tri);
        layout.centroids_.push_back({(tri[0].x + tri[1].x + tri[2].x) / 3,
                                     (tri[0].y + tri[1].y + tri[2].y) / 3});
      }
    }
  }
  return layout;
}

ScopeSet scopes(const HexLayout& layout, int hex, bool include_second_ring) {
  layout.check_hex(hex);
  ScopeSet set;
  set.owner = hex;
  for (int m : layout.neighbors(hex)) {
    const int own_wedge = layout.facing_wedge(hex, m);
    const int their_wedge = layout.facing_wedge(m, hex);
    for (int sub : {1, 2}) {
      set.scope0.push_back({hex, own_wedge * kSubsPerWedge + sub});
      set.scope1.push_back({m, their_wedge * kSubsPerWedge + sub});
    }
    if (include_second_ring) {
      set.scope0.push_back({hex, own_wedge * kSubsPerWedge + 3});
      set.scope1.push_back({m, their_wedge * kSubsPerWedge + 3});
    }
  }
  return set;
}

HexLayout preset_wnl1() {
  // Three mutually adjacent cells: neighbors of hexagon 0 in the 30 and 90
  // degree directions.
  return build_layout({{0.0, 0.0}, {1.5, kS3 / 2}, {0.0, kS3}}, 1.0);
}

HexLayout preset_wnl2() {
  std::vector<Point> centers{{0.0, 0.0}};
  for (int k = 0; k < kWedgesPerHex; ++k)
    centers.push_back({kS3 * kNeighborDir[k].x, kS3 * kNeighborDir[k].y});
  return build_layout(std::move(centers), 1.0);
}

}  // namespace hexlb
