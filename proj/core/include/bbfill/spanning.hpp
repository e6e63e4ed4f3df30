#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "bbfill/homotopy.hpp"

namespace bbfill {

/// Which half of the middle segment comes first: Forward walks the third
/// block before the horizontal run in the two line blocks, Backward after.
enum class Direction : std::uint8_t { Forward, Backward };

constexpr Direction opposite(Direction d) {
  return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

/// Edge path between two corners whose lines sit in different blocks.
///
/// With i the block of `from_line`, j the block of `to_line` and k the third
/// block, the path is three segments:
///   1. a geodesic in block j to the target's coordinate, compensated on the
///      source line, ending at the source-side vertex;
///   2. the middle: a geodesic in block k plus a horizontal run along both
///      lines, ending at the target-side vertex;
///   3. a geodesic in block i compensated on the target line.
struct SpanningPath {
  Point from;
  Point to;
  MonotoneLine from_line;
  MonotoneLine to_line;
  Direction direction = Direction::Forward;
  std::vector<Point> vertices;
  /// Vertex indices where segments 1, 2 and 3 end.
  std::array<std::size_t, 3> segment_end{};

  std::size_t length() const { return vertices.size() - 1; }
  std::size_t segment_length(int s) const;
  const Point& from_side() const { return vertices[segment_end[0]]; }
  const Point& to_side() const { return vertices[segment_end[1]]; }
  /// Vertices of segment s (0-based), endpoints included.
  std::vector<Point> segment(int s) const;
  SpanningPath reversed() const;
};

/// Builds the spanning path; depends only on the endpoints, their lines and
/// the direction, and spanning_path(b, a, opposite(dir)) is its reverse.
/// Throws on a color clash or when a corner is off its line.
SpanningPath spanning_path(const BlockedProduct& X, const Point& a, const Point& b, const MonotoneLine& la,
                           const MonotoneLine& lb, Direction dir);

/// Path from `from` to the point that takes block `block` from `target` and
/// keeps every other block except the line's, which compensates.
std::vector<Point> compensated_walk(const BlockedProduct& X, const Point& from, int block, const Point& target,
                                    const MonotoneLine& line);

/// Filling disk for the loop side(x,y) side(y,z) side(z,x) with one corner per
/// block. Side s runs from corner s to corner s+1 (mod 3).
struct SpanningTriangle {
  std::array<Point, 3> corners;
  std::array<MonotoneLine, 3> lines;
  std::array<SpanningPath, 3> sides;
  /// I_c: on every line, with corner c's line carrying the height balance.
  std::array<Point, 3> interior;
  /// From the side vertex of side c near corner c to I_c.
  std::array<std::vector<Point>, 3> out_to_interior;
  /// From the side vertex of side c-1 near corner c to I_c.
  std::array<std::vector<Point>, 3> in_to_interior;
  /// I_c to I_{c+1}.
  std::array<std::vector<Point>, 3> interior_paths;
  /// Sum of the corner-pair distance surrogates.
  std::size_t surrogate_perimeter = 0;

  /// Regions in fill order: corner 0, middle 0, corner 1, middle 1, corner 2,
  /// middle 2, central.
  std::array<std::size_t, 7> region_area{};
  std::array<std::size_t, 7> region_perimeter{};
  Trace trace;

  std::size_t area() const;
  std::vector<Point> boundary() const;
};

/// Computes interior vertices and paths from given sides. `surrogates[s]` is an
/// upper bound on the level-set distance spanned by side s; every side must
/// have length at most 4 times it.
SpanningTriangle build_spanning_triangle(const BlockedProduct& X, std::array<SpanningPath, 3> sides,
                                         std::array<std::size_t, 3> surrogates);

/// Collapses the closed window of the live loop starting at `pos`, which must
/// read side 0, side 1, side 2. Records per-region areas and perimeters and
/// throws if a region exceeds perimeter 4 * surrogate_perimeter or leaves its
/// two-block subspace. Returns the area spent.
std::size_t fill_spanning_triangle(TraceBuilder& builder, std::size_t pos, SpanningTriangle& tri);

/// Stand-alone construction: builds the sides (unless `shared` supplies any),
/// fills them, and stores the trace of the loop based at corner 0. Without
/// surrogates the side lengths stand in.
SpanningTriangle spanning_triangle(const BlockedProduct& X, const std::array<Point, 3>& corners,
                                   const std::array<MonotoneLine, 3>& lines, const std::array<Direction, 3>& dirs,
                                   const std::array<std::optional<SpanningPath>, 3>& shared = {},
                                   std::optional<std::array<std::size_t, 3>> surrogates = std::nullopt);

/// Exact level-set distance by bidirectional breadth-first search, or nullopt
/// when it exceeds `limit`. Meant for small distances.
std::optional<std::size_t> level_distance(const BlockedProduct& X, const Point& u, const Point& v,
                                          std::size_t limit);

}  // namespace bbfill
