#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace hexlb {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr int kWedgesPerHex = 6;
inline constexpr int kSubsPerWedge = 4;
inline constexpr int kTrianglesPerHex = kWedgesPerHex * kSubsPerWedge;

/// Addresses one triangular microcell: `hex` is the owning hexagon,
/// `local` is wedge-major, local = 4*wedge + sub. Sub 0 is the inner apex
/// triangle touching the hexagon center, subs 1 and 2 sit on the hexagon
/// edge of their wedge, sub 3 is the inverted triangle between them.
struct TriangleId {
  int hex = 0;
  int local = 0;

  int wedge() const { return local / kSubsPerWedge; }
  int sub() const { return local % kSubsPerWedge; }

  friend auto operator<=>(const TriangleId&, const TriangleId&) = default;
};

struct OverlapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable hexagonal cell layout. Each hexagon has circumradius `side`
/// with vertices at multiples of 60 degrees from its center, so neighbors
/// sit at distance sqrt(3)*side in directions 30 + 60k degrees. Neighbor
/// lists, triangle vertices and centroids are derived at construction and
/// the object is safe for unrestricted concurrent reads afterwards.
class HexLayout {
 public:
  double side() const { return side_; }
  int hex_count() const { return static_cast<int>(centers_.size()); }
  int triangle_count() const { return hex_count() * kTrianglesPerHex; }
  const std::vector<Point>& centers() const { return centers_; }
  const Point& center(int hex) const;

  /// Hexagons whose center lies at distance sqrt(3)*side (tolerance 1e-6
  /// in units of side), ascending by index.
  const std::vector<int>& neighbors(int hex) const;

  /// Wedge of `hex` whose edge is shared with `neighbor`. Throws
  /// GeometryError if the two are not edge-aligned neighbors.
  int facing_wedge(int hex, int neighbor) const;

  const std::array<Point, 3>& triangle_vertices(TriangleId t) const;
  const Point& triangle_centroid(TriangleId t) const;

  int global_index(TriangleId t) const {
    check_triangle(t);
    return t.hex * kTrianglesPerHex + t.local;
  }
  TriangleId triangle_at(int global_index) const;

  void check_hex(int hex) const;
  void check_triangle(TriangleId t) const;

  friend HexLayout build_layout(std::vector<Point> centers, double side);

 private:
  HexLayout() = default;

  double side_ = 1.0;
  std::vector<Point> centers_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::array<Point, 3>> vertices_;  // one entry per triangle
  std::vector<Point> centroids_;
};

/// Validates geometry and caches derived data. Throws OverlapError when two
/// centers are closer than sqrt(3)*side - 1e-6*side, and std::invalid_argument
/// for non-finite coordinates, empty centers or non-positive side.
HexLayout build_layout(std::vector<Point> centers, double side);

/// Scope classification of boundary microcells for one hexagon.
/// scope0: the owner's own edge triangles facing a neighbor.
/// scope1: the neighbors' edge triangles facing the owner, i.e. the
/// triangles the owner may take over. Ordered by neighbor index, then
/// local index.
struct ScopeSet {
  int owner = 0;
  std::vector<TriangleId> scope0;
  std::vector<TriangleId> scope1;
};

/// `include_second_ring` additionally admits each shared wedge's sub-3
/// middle triangle, for experiments needing more transferable mass.
ScopeSet scopes(const HexLayout& layout, int hex,
                bool include_second_ring = false);

/// Three mutually adjacent hexagons, side 1 (the 3-cell worked layout).
HexLayout preset_wnl1();

/// One central hexagon with a full ring of six, side 1 (the 7-cell layout).
HexLayout preset_wnl2();

}  // namespace hexlb
