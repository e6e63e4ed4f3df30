#pragma once

#include <cstddef>

#include "bbfill/homotopy.hpp"

namespace bbfill {

class ConfinementError : public Error {
 public:
  using Error::Error;
};

/// A loop together with a monotone line certifying that it lies in
/// [X_i x X_j x L]_0: every vertex has its line-block coordinate on the line.
struct ConfinedLoop {
  Loop loop;
  MonotoneLine line;

  /// Throws ConfinementError naming the first vertex off the line.
  void check() const;
};

/// Quadratic filler for loops confined to a two-block subcomplex.
///
/// Works in the pulled-back product X_i x X_j: horizontal diagonals become
/// two-edge corners through the lower intermediate vertex (one triangle
/// each), then the word of single-tree moves is insertion-sorted by tree index.
/// Each transposition of moves on distinct trees costs one square (two
/// triangles) and same-tree backtracks are reduced as soon as they meet. The
/// area is at most 2n^2 + n.
Trace fill_two_block(const ConfinedLoop& cl);

/// Same, acting on the closed window of `length` steps starting at `pos` of a
/// live loop. The window collapses to nothing.
void fill_two_block(TraceBuilder& builder, std::size_t pos, std::size_t length, const MonotoneLine& line);

/// Upper bound on fill_two_block's area for a loop of n steps.
constexpr std::size_t two_block_area_bound(std::size_t n) { return 2 * n * n + n; }

/// Exact minimal filling area of a loop in the plane [L1 x L2 x L3]_0 spanned by
/// the canonical lines through the loop's base: the sum of |winding number|
/// over all lattice triangles.
std::size_t plane_min_area(const Loop& loop);

}  // namespace bbfill
