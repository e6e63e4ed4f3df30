#include "bbfill/spanning.hpp"

#include <algorithm>
#include <unordered_map>

#include "bbfill/subfill.hpp"

namespace bbfill {

namespace {

// Walks block `block` along a geodesic to `target`'s coordinates, pairing each
// tree move with a step of `line` in the opposite height direction.
void append_compensated(const BlockedProduct& X, std::vector<Point>& path, int block, const Point& target,
                        const MonotoneLine& line) {
  if (block == line.block_index()) throw Error("compensating line lies in the walked block");
  const auto from = X.block_coords(path.back(), block);
  const auto to = X.block_coords(target, block);
  const int first = X.first_tree(block);
  const int line_tree = X.first_tree(line.block_index());
  for (const BlockMove& m : X.block(block).geodesic(from, to)) {
    Point p = X.apply(path.back(), TreeMove{first + m.tree, m.letter});
    p = X.apply(p, TreeMove{line_tree, Letter(m.letter.is_generator() ? -1 : 1)});
    path.push_back(p);
  }
}

// Moves block `p` along its line to height `level`, block `q` along its line
// the opposite way.
void append_horizontal(const BlockedProduct& X, std::vector<Point>& path, int p, int level, int q) {
  const int tp = X.first_tree(p);
  const int tq = X.first_tree(q);
  for (int h = X.block_height(path.back(), p); h != level;) {
    const int dir = h < level ? 1 : -1;
    Point next = X.apply(path.back(), TreeMove{tp, Letter(dir)});
    next = X.apply(next, TreeMove{tq, Letter(-dir)});
    path.push_back(next);
    h += dir;
  }
}

}  // namespace

std::size_t SpanningPath::segment_length(int s) const {
  const std::size_t begin = s == 0 ? 0 : segment_end[static_cast<std::size_t>(s - 1)];
  return segment_end[static_cast<std::size_t>(s)] - begin;
}

std::vector<Point> SpanningPath::segment(int s) const {
  const std::size_t begin = s == 0 ? 0 : segment_end[static_cast<std::size_t>(s - 1)];
  return {vertices.begin() + static_cast<std::ptrdiff_t>(begin),
          vertices.begin() + static_cast<std::ptrdiff_t>(segment_end[static_cast<std::size_t>(s)]) + 1};
}

SpanningPath SpanningPath::reversed() const {
  SpanningPath r;
  r.from = to;
  r.to = from;
  r.from_line = to_line;
  r.to_line = from_line;
  r.direction = opposite(direction);
  r.vertices.assign(vertices.rbegin(), vertices.rend());
  const std::size_t n = length();
  r.segment_end = {n - segment_end[1], n - segment_end[0], n};
  return r;
}

SpanningPath spanning_path(const BlockedProduct& X, const Point& a, const Point& b, const MonotoneLine& la,
                           const MonotoneLine& lb, Direction dir) {
  const int i = la.block_index();
  const int j = lb.block_index();
  if (i == j) throw Error("spanning path: both corners have color " + std::to_string(i + 1));
  if (!X.on_line(a, la)) throw Error("spanning path: " + X.format(a) + " is not on its line");
  if (!X.on_line(b, lb)) throw Error("spanning path: " + X.format(b) + " is not on its line");
  // Built directly for the cyclic color pairs (1,2), (2,3), (3,1); the other
  // orientation is the reverse.
  if (j != (i + 1) % 3) return spanning_path(X, b, a, lb, la, opposite(dir)).reversed();

  const int k = 3 - i - j;
  SpanningPath sp;
  sp.from = a;
  sp.to = b;
  sp.from_line = la;
  sp.to_line = lb;
  sp.direction = dir;
  sp.vertices.push_back(a);
  append_compensated(X, sp.vertices, j, b, la);
  sp.segment_end[0] = sp.length();
  const int home = X.block_height(a, i);
  if (dir == Direction::Forward) {
    append_compensated(X, sp.vertices, k, b, la);
    append_horizontal(X, sp.vertices, i, home, j);
  } else {
    // Run horizontally to the level from which the block-k walk lands home.
    append_horizontal(X, sp.vertices, i, home + X.block_height(b, k) - X.block_height(a, k), j);
    append_compensated(X, sp.vertices, k, b, la);
  }
  sp.segment_end[1] = sp.length();
  append_compensated(X, sp.vertices, i, b, lb);
  sp.segment_end[2] = sp.length();
  if (sp.vertices.back() != b) throw Error("spanning path: construction missed its endpoint");
  return sp;
}

std::vector<Point> compensated_walk(const BlockedProduct& X, const Point& from, int block, const Point& target,
                                    const MonotoneLine& line) {
  std::vector<Point> path{from};
  append_compensated(X, path, block, target, line);
  return path;
}

std::size_t SpanningTriangle::area() const {
  std::size_t total = 0;
  for (std::size_t a : region_area) total += a;
  return total;
}

std::vector<Point> SpanningTriangle::boundary() const {
  std::vector<Point> out{corners[0]};
  for (const auto& side : sides) out.insert(out.end(), side.vertices.begin() + 1, side.vertices.end());
  return out;
}

SpanningTriangle build_spanning_triangle(const BlockedProduct& X, std::array<SpanningPath, 3> sides,
                                         std::array<std::size_t, 3> surrogates) {
  SpanningTriangle tri;
  for (std::size_t c = 0; c < 3; ++c) {
    const SpanningPath& side = sides[c];
    const SpanningPath& next = sides[(c + 1) % 3];
    if (side.to != next.from || !(side.to_line == next.from_line)) {
      throw Error("spanning triangle: side " + std::to_string(c) + " does not meet the next side");
    }
    if (side.length() > 4 * surrogates[c]) {
      throw Error("spanning triangle: side " + std::to_string(c) + " of length " + std::to_string(side.length()) +
                  " exceeds four times its distance bound " + std::to_string(surrogates[c]));
    }
    tri.corners[c] = side.from;
    tri.lines[c] = side.from_line;
    tri.surrogate_perimeter += surrogates[c];
  }
  tri.sides = std::move(sides);

  std::array<int, 3> block{};
  for (std::size_t c = 0; c < 3; ++c) block[c] = tri.lines[c].block_index();

  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t n1 = (c + 1) % 3;
    const std::size_t n2 = (c + 2) % 3;
    Point p = tri.corners[c];
    X.set_block_coords(p, block[n1], X.block_coords(tri.corners[n1], block[n1]));
    X.set_block_coords(p, block[n2], X.block_coords(tri.corners[n2], block[n2]));
    const int level = -(X.block_height(tri.corners[n1], block[n1]) + X.block_height(tri.corners[n2], block[n2]));
    X.place_on_line(p, tri.lines[c], level);
    tri.interior[c] = p;
  }
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t n1 = (c + 1) % 3;
    const std::size_t n2 = (c + 2) % 3;
    tri.out_to_interior[c] =
        compensated_walk(X, tri.sides[c].from_side(), block[n2], tri.interior[c], tri.lines[c]);
    tri.in_to_interior[c] =
        compensated_walk(X, tri.sides[n2].to_side(), block[n1], tri.interior[c], tri.lines[c]);
    std::vector<Point> path{tri.interior[c]};
    append_horizontal(X, path, block[c], X.block_height(tri.interior[n1], block[c]), block[n1]);
    tri.interior_paths[c] = std::move(path);
  }
  for (std::size_t c = 0; c < 3; ++c) {
    if (tri.out_to_interior[c].back() != tri.interior[c] || tri.in_to_interior[c].back() != tri.interior[c] ||
        tri.interior_paths[c].back() != tri.interior[(c + 1) % 3]) {
      throw Error("spanning triangle: interior path " + std::to_string(c) + " misses its endpoint");
    }
  }
  return tri;
}

namespace {

std::vector<Point> reversed(const std::vector<Point>& path) { return {path.rbegin(), path.rend()}; }

std::size_t length(const std::vector<Point>& path) { return path.size() - 1; }

// Appends path b to path a, sharing the joint vertex.
std::vector<Point> join(std::vector<Point> a, const std::vector<Point>& b) {
  if (a.back() != b.front()) throw Error("spanning triangle: joined paths do not meet");
  a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

}  // namespace

std::size_t fill_spanning_triangle(TraceBuilder& builder, std::size_t pos, SpanningTriangle& tri) {
  const std::size_t start_area = builder.area();
  const std::size_t cap = 4 * tri.surrogate_perimeter;
  std::size_t walk = pos;
  for (std::size_t c = 0; c < 3; ++c) {
    if (builder.vertex(walk) != tri.corners[c]) {
      throw Error("spanning triangle: loop window does not pass corner " + std::to_string(c));
    }
    walk += tri.sides[c].length();
  }
  if (builder.vertex(walk) != tri.corners[0]) throw Error("spanning triangle: loop window is not closed");

  // Replaces the arc of `len` steps at `at` by `to`, filling the region they bound.
  std::size_t region = 0;
  auto rewrite = [&](std::size_t at, std::size_t len, const std::vector<Point>& to, const MonotoneLine& line) {
    const std::size_t before = builder.area();
    const std::size_t perimeter = len + length(to);
    if (perimeter > cap) {
      throw Error("spanning triangle: region " + std::to_string(region) + " has perimeter " +
                  std::to_string(perimeter) + " above " + std::to_string(cap));
    }
    builder.insert_detour(at + len, reversed(to));
    try {
      fill_two_block(builder, at, perimeter, line);
    } catch (const ConfinementError& e) {
      throw ConfinementError("spanning triangle region " + std::to_string(region) + ": " + e.what());
    }
    tri.region_area[region] = builder.area() - before;
    tri.region_perimeter[region] = perimeter;
    ++region;
  };

  const auto& s = tri.sides;
  auto seg = [&](int side, int k) { return s[static_cast<std::size_t>(side)].segment_length(k); };
  const auto& out = tri.out_to_interior;
  const auto& in = tri.in_to_interior;
  const auto& ip = tri.interior_paths;

  // U runs from corner 0 back along side 2 to its side vertex, then to I_0.
  const std::vector<Point> u = join(reversed(s[2].segment(2)), in[0]);
  const std::size_t u_len = length(u);

  rewrite(pos, seg(0, 0), join(u, reversed(out[0])), tri.lines[0]);
  std::size_t at = pos + u_len;
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t n1 = (c + 1) % 3;
    // Middle of side c: from I_c out to the side and across it.
    rewrite(at, length(out[c]) + seg(static_cast<int>(c), 1), join(ip[c], reversed(in[n1])), tri.lines[c]);
    at += length(ip[c]);
    if (c == 2) break;
    // Corner n1: from I_n1 to the side c vertex, around the corner, to the side n1 vertex.
    rewrite(at, length(in[n1]) + seg(static_cast<int>(c), 2) + seg(static_cast<int>(n1), 0), reversed(out[n1]),
            tri.lines[n1]);
  }

  // Left with U Z U^-1, where Z runs around the interior vertices.
  const std::size_t z_len = length(ip[0]) + length(ip[1]) + length(ip[2]);
  {
    const std::size_t before = builder.area();
    fill_two_block(builder, pos + u_len, z_len, tri.lines[0]);
    tri.region_area[6] = builder.area() - before;
    tri.region_perimeter[6] = z_len;
    if (z_len > cap) throw Error("spanning triangle: central region exceeds its perimeter bound");
  }
  if (builder.reduce_window(pos, 2 * u_len) != 0) {
    throw Error("spanning triangle: conjugating path did not cancel");
  }
  return builder.area() - start_area;
}

SpanningTriangle spanning_triangle(const BlockedProduct& X, const std::array<Point, 3>& corners,
                                   const std::array<MonotoneLine, 3>& lines, const std::array<Direction, 3>& dirs,
                                   const std::array<std::optional<SpanningPath>, 3>& shared,
                                   std::optional<std::array<std::size_t, 3>> surrogates) {
  std::array<SpanningPath, 3> sides;
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t n1 = (c + 1) % 3;
    if (shared[c]) {
      if (shared[c]->from != corners[c] || shared[c]->to != corners[n1]) {
        throw Error("spanning triangle: shared side " + std::to_string(c) + " has other endpoints");
      }
      sides[c] = *shared[c];
    } else {
      sides[c] = spanning_path(X, corners[c], corners[n1], lines[c], lines[n1], dirs[c]);
    }
  }
  std::array<std::size_t, 3> bounds{};
  for (std::size_t c = 0; c < 3; ++c) bounds[c] = surrogates ? (*surrogates)[c] : sides[c].length();
  SpanningTriangle tri = build_spanning_triangle(X, std::move(sides), bounds);

  const std::vector<Point> boundary = tri.boundary();
  Loop loop = Loop::from_vertices(X, boundary);
  Trace trace;
  TraceBuilder builder(loop, trace);
  fill_spanning_triangle(builder, 0, tri);
  if (loop.length() != 0) throw Error("spanning triangle: fill left a nonempty loop");
  tri.trace = std::move(trace);
  return tri;
}

std::optional<std::size_t> level_distance(const BlockedProduct& X, const Point& u, const Point& v,
                                          std::size_t limit) {
  if (u == v) return 0;
  std::array<std::unordered_map<Point, std::size_t, PointHash>, 2> seen{{{{u, 0}}, {{v, 0}}}};
  std::array<std::vector<Point>, 2> frontier{{{u}, {v}}};
  std::array<std::size_t, 2> depth{0, 0};
  while (depth[0] + depth[1] < limit && !frontier[0].empty() && !frontier[1].empty()) {
    const std::size_t side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<Point> next;
    std::optional<std::size_t> best;
    for (const Point& p : frontier[side]) {
      for (const LevelEdge& e : X.neighbors(p)) {
        const Point q = *X.apply(p, e.step);
        if (auto it = seen[1 - side].find(q); it != seen[1 - side].end()) {
          const std::size_t d = depth[side] + 1 + it->second;
          if (!best || d < *best) best = d;
        }
        if (seen[side].emplace(q, depth[side] + 1).second) next.push_back(q);
      }
    }
    ++depth[side];
    if (best) return *best <= limit ? best : std::nullopt;
    frontier[side] = std::move(next);
  }
  return std::nullopt;
}

}  // namespace bbfill
