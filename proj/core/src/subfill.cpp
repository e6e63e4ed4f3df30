#include "bbfill/subfill.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace bbfill {

void ConfinedLoop::check() const {
  const BlockedProduct& X = loop.product();
  for (std::size_t i = 0; i <= loop.length(); ++i) {
    if (!X.on_line(loop.vertex(i), line)) {
      throw ConfinementError("vertex " + std::to_string(i) + " " + X.format(loop.vertex(i)) +
                             " leaves the line in block " + std::to_string(line.block_index() + 1));
    }
  }
}

Trace fill_two_block(const ConfinedLoop& cl) {
  cl.check();
  Loop work = cl.loop;
  Trace trace;
  TraceBuilder builder(work, trace);
  fill_two_block(builder, 0, work.length(), cl.line);
  return trace;
}

namespace {

// The single active-tree move carried by a transverse step.
TreeMove active_move(const BlockedProduct& X, const LineEmbedding& f, const Point& u, const Point& v) {
  const auto step = X.edge_between(u, v);
  if (!step) throw Error("two-block filler: vertices are not adjacent");
  if (f.active_tree(step->up.tree) && !f.active_tree(step->down.tree)) return step->up;
  if (f.active_tree(step->down.tree) && !f.active_tree(step->up.tree)) return step->down;
  throw Error("two-block filler: step is not transverse");
}

}  // namespace

void fill_two_block(TraceBuilder& builder, std::size_t pos, std::size_t length, const MonotoneLine& line) {
  const BlockedProduct& X = builder.product();
  const LineEmbedding f(X, line);
  const int line_tree = X.first_tree(line.block_index());

  for (std::size_t i = pos; i <= pos + length; ++i) {
    if (!X.on_line(builder.vertex(i), line)) {
      throw ConfinementError("two-block window vertex " + std::to_string(i - pos) + " " +
                             X.format(builder.vertex(i)) + " leaves the confining line");
    }
  }

  // Free reduction first, then each horizontal diagonal becomes the corner
  // through its lower intermediate vertex.
  std::size_t end = pos + builder.reduce_window(pos, length);
  for (std::size_t i = pos; i < end;) {
    const Point& v = builder.vertex(i);
    if (builder.loop().is_stay(i)) {
      builder.reduce(i);
      --end;
      continue;
    }
    const auto step = X.edge_between(v, builder.vertex(i + 1));
    if (!step) throw Error("two-block filler: loop vertices are not adjacent");
    const bool up_active = f.active_tree(step->up.tree);
    const bool down_active = f.active_tree(step->down.tree);
    if (up_active && down_active) {
      Point corner = X.apply(v, step->down);
      corner = X.apply(corner, TreeMove{line_tree, Letter(1)});
      builder.cell(i, 1, corner);
      i += 2;
      ++end;
    } else if (up_active != down_active) {
      ++i;
    } else {
      throw ConfinementError("two-block filler: step " + std::to_string(i - pos) + " moves only the line block");
    }
  }

  // Stable insertion sort by tree index with eager free reduction.
  auto tree_at = [&](std::size_t i) { return active_move(X, f, builder.vertex(i), builder.vertex(i + 1)); };
  std::size_t sorted = pos;
  while (sorted < end) {
    std::size_t j = sorted;
    TreeMove cur = tree_at(j);
    while (j > pos) {
      const TreeMove prev = tree_at(j - 1);
      if (prev.tree <= cur.tree) {
        if (prev.tree == cur.tree && prev.letter == cur.letter.inverse()) {
          builder.reduce(j - 1);
          end -= 2;
          --sorted;
          goto next;
        }
        break;
      }
      // Swap prev and cur across the square they span.
      const Point v = builder.vertex(j - 1);
      const Point alt = *X.apply(v, f.transverse_step(v, cur));
      if (prev.letter.is_generator() == cur.letter.is_generator()) {
        builder.cell(j, 1, alt);
        builder.cell(j - 1, 2, alt);
      } else {
        builder.cell(j - 1, 2, alt);
        builder.cell(j - 1, 1, alt);
      }
      --j;
    }
    ++sorted;
  next:;
  }
  if (end != pos) throw Error("two-block filler: sorted word did not reduce to the empty word");
}

namespace {

// Winding number of a closed lattice polygon around q, in scaled coordinates.
long winding(std::span<const std::array<long, 2>> poly, std::array<long, 2> q) {
  long w = 0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[i + 1];
    const long cross = (b[0] - a[0]) * (q[1] - a[1]) - (q[0] - a[0]) * (b[1] - a[1]);
    if (a[1] <= q[1]) {
      if (b[1] > q[1] && cross > 0) ++w;
    } else if (b[1] <= q[1] && cross < 0) {
      --w;
    }
  }
  return w;
}

}  // namespace

std::size_t plane_min_area(const Loop& loop) {
  const BlockedProduct& X = loop.product();
  std::array<MonotoneLine, 3> lines;
  for (int b = 0; b < 3; ++b) lines[static_cast<std::size_t>(b)] = X.canonical_line(loop.base(), b);

  std::vector<std::array<long, 2>> poly;
  poly.reserve(loop.length() + 1);
  long lo_x = std::numeric_limits<long>::max(), hi_x = std::numeric_limits<long>::min();
  long lo_y = lo_x, hi_y = hi_x;
  for (std::size_t i = 0; i <= loop.length(); ++i) {
    const Point& p = loop.vertex(i);
    for (const auto& line : lines) {
      if (!X.on_line(p, line)) {
        throw ConfinementError("vertex " + std::to_string(i) + " leaves the plane of canonical lines");
      }
    }
    const long x = X.block_height(p, 0);
    const long y = X.block_height(p, 1);
    poly.push_back({3 * x, 3 * y});
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }

  // Each unit square [i,i+1]x[j,j+1] is cut by its anti-diagonal into two
  // lattice triangles with centroids at (i+1/3, j+1/3) and (i+2/3, j+2/3).
  std::size_t area = 0;
  for (long i = lo_x; i < hi_x; ++i) {
    for (long j = lo_y; j < hi_y; ++j) {
      area += static_cast<std::size_t>(std::labs(winding(poly, {3 * i + 1, 3 * j + 1})));
      area += static_cast<std::size_t>(std::labs(winding(poly, {3 * i + 2, 3 * j + 2})));
    }
  }
  return area;
}

}  // namespace bbfill
