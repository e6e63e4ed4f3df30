#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bbfill/spanning.hpp"

namespace bbfill {

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

/// Smallest k with n <= 3 * 2^k.
int template_depth(std::size_t n);

/// Appends stays so the length becomes 3 * 2^k. Requires n > 3.
std::pair<Loop, int> pad_loop(const Loop& p);

/// A triangle of the template with corners first < mid < last along the
/// boundary. `last` may equal the boundary size, meaning position 0.
struct TemplateTriangle {
  std::size_t first = 0;
  std::size_t mid = 0;
  std::size_t last = 0;
  int depth = 0;
};

/// The triangulated disk whose boundary has 3 * 2^k positions: a central
/// triangle on positions 0, n/3, 2n/3, each boundary arc cut recursively at its
/// midpoint, and one bigon per boundary edge.
struct TemplateDisk {
  int k = 0;
  std::size_t boundary_size = 0;
  /// Central triangle first, then by increasing depth, left to right.
  std::vector<TemplateTriangle> triangles;
  /// Block index (color minus one) of each boundary position.
  std::vector<int> color;

  std::size_t wrap(std::size_t pos) const { return pos % boundary_size; }
  std::size_t triangles_at_depth(int depth) const;
  /// Every edge {u, v} with u < v: the boundary edges and the triangle sides.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

TemplateDisk build_template(int k);

struct BigonFill {
  enum class Method : std::uint8_t { Reduction, Cone, TwoBlock, Search };
  Trace trace;
  Method method = Method::Reduction;
  std::size_t area() const { return trace.area(); }
};

const char* method_name(BigonFill::Method m);

/// Fills the loop e * sigma^-1, where e is the edge (or stay) from a to b and
/// sigma the spanning path from a to b. Tries the free reduction, cones from
/// nearby vertices and the two-block filler confined to a block that e leaves
/// fixed, and keeps the smallest. Falls back to iterative-deepening search when
/// those exceed `budget`; throws SearchExhausted if nothing fits.
BigonFill fill_bigon(const BlockedProduct& X, const Point& a, const Point& b, const SpanningPath& sigma,
                     std::size_t budget = 8);

/// Minimal-effort fill of a short loop: free reduction, cones, then
/// iterative-deepening search over cell moves up to `budget` cells.
Trace fill_small_loop(const Loop& loop, std::size_t budget);

struct FillOptions {
  std::size_t bigon_budget = 8;
  std::size_t small_budget = 16;
  bool verify = true;
};

struct LoopFillReport {
  bool verified = false;
  std::string message;
  std::size_t n = 0;
  std::size_t padded_length = 0;
  int k = 0;
  std::size_t area = 0;
  std::size_t bigon_area = 0;
  std::size_t max_bigon_area = 0;
  /// Area spent on the triangles of each depth; index 0 is the central one.
  std::vector<std::size_t> depth_area;
  /// Ceiling (28C + B/4 + 1) * 12^(4 alpha) * 2^(k alpha) with C = 2, B = 8, alpha = 2.
  double area_bound = 0;
};

struct LoopFill {
  Trace trace;
  LoopFillReport report;
};

/// The constant K with area <= K n^2 for the bound above.
double quadratic_constant();

double template_area_bound(int k);

/// Fills any loop: pads it, builds the template, rewrites every boundary step
/// into its spanning path, collapses the triangles from the outermost depth
/// inward and finally the central one. Loops of length at most 3 are searched
/// directly.
LoopFill fill_loop(const Loop& p, const FillOptions& options = {});

}  // namespace bbfill
