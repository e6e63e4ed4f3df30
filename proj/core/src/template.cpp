#include "bbfill/template.hpp"

#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "bbfill/subfill.hpp"

namespace bbfill {

int template_depth(std::size_t n) {
  int k = 0;
  while ((std::size_t{3} << k) < n) ++k;
  return k;
}

std::pair<Loop, int> pad_loop(const Loop& p) {
  if (p.length() <= 3) throw Error("padding needs a loop of length at least 4");
  const int k = template_depth(p.length());
  std::vector<Point> verts = p.vertices();
  verts.resize((std::size_t{3} << k) + 1, p.base());
  return {Loop::from_vertices(p.product(), verts), k};
}

std::size_t TemplateDisk::triangles_at_depth(int depth) const {
  std::size_t count = 0;
  for (const auto& t : triangles) count += t.depth == depth ? 1 : 0;
  return count;
}

std::vector<std::pair<std::size_t, std::size_t>> TemplateDisk::edges() const {
  std::set<std::pair<std::size_t, std::size_t>> out;
  auto add = [&](std::size_t u, std::size_t v) {
    u = wrap(u);
    v = wrap(v);
    out.emplace(std::min(u, v), std::max(u, v));
  };
  for (std::size_t i = 0; i < boundary_size; ++i) add(i, i + 1);
  for (const auto& t : triangles) {
    add(t.first, t.mid);
    add(t.mid, t.last);
    add(t.first, t.last);
  }
  return {out.begin(), out.end()};
}

TemplateDisk build_template(int k) {
  if (k < 0 || k > 28) throw Error("template depth out of range");
  TemplateDisk T;
  T.k = k;
  T.boundary_size = std::size_t{3} << k;
  const std::size_t third = T.boundary_size / 3;
  T.color.assign(T.boundary_size, -1);
  T.color[0] = 0;
  T.color[third] = 1;
  T.color[2 * third] = 2;
  T.triangles.push_back({0, third, 2 * third, 0});
  std::vector<std::pair<std::size_t, std::size_t>> arcs{{0, third}, {third, 2 * third}, {2 * third, T.boundary_size}};
  for (int depth = 1; depth <= k; ++depth) {
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (const auto& [l, r] : arcs) {
      const std::size_t m = (l + r) / 2;
      T.color[m] = 3 - T.color[l] - T.color[T.wrap(r)];
      T.triangles.push_back({l, m, r, depth});
      next.emplace_back(l, m);
      next.emplace_back(m, r);
    }
    arcs = std::move(next);
  }
  return T;
}

const char* method_name(BigonFill::Method m) {
  switch (m) {
    case BigonFill::Method::Reduction: return "reduction";
    case BigonFill::Method::Cone: return "cone";
    case BigonFill::Method::TwoBlock: return "two-block";
    case BigonFill::Method::Search: return "search";
  }
  return "?";
}

namespace {

// Cone from c: walk c around the loop, one triangle per edge not touching c.
std::optional<Trace> cone_fill(const Loop& loop, const Point& c) {
  const BlockedProduct& X = loop.product();
  Loop work = loop;
  Trace trace;
  TraceBuilder b(work, trace);
  if (work.length() == 0) return trace;
  if (c == work.base()) {
    b.insert_stay(0);
  } else if (auto step = X.edge_between(work.base(), c)) {
    b.insert(0, *step);
  } else {
    return std::nullopt;
  }
  while (work.length() > 0) {
    const std::size_t len = work.length();
    const std::size_t p = len >= 3 ? 1 : 0;
    if (work.is_stay(p)) {
      b.reduce(p);
    } else if (p + 2 <= len && work.vertex(p + 2) == work.vertex(p)) {
      b.reduce(p);
    } else if (p == 1 && triangle_from_vertices(X, work.vertex(1), work.vertex(2), work.vertex(3))) {
      b.cell(1, 2, work.vertex(2));
    } else {
      return std::nullopt;
    }
  }
  return trace;
}

std::optional<Trace> best_cone(const Loop& loop) {
  const BlockedProduct& X = loop.product();
  // Loop vertices first, then their neighbours.
  std::vector<Point> ordered;
  for (std::size_t i = 0; i < loop.length(); ++i) ordered.push_back(loop.vertex(i));
  for (std::size_t i = 0; i < loop.length(); ++i) {
    for (const LevelEdge& e : X.neighbors(loop.vertex(i))) ordered.push_back(*X.apply(e.source, e.step));
  }
  std::optional<Trace> best;
  std::unordered_set<Point, PointHash> tried;
  for (const Point& c : ordered) {
    if (!tried.insert(c).second) continue;
    auto t = cone_fill(loop, c);
    if (t && (!best || t->area() < best->area())) best = std::move(t);
    if (best && best->area() <= 1) break;
  }
  return best;
}

class Searcher {
 public:
  explicit Searcher(std::size_t node_limit) : node_limit_(node_limit) {}

  std::optional<Trace> run(const Loop& loop, std::size_t max_cells) {
    for (std::size_t depth = 0; depth <= max_cells; ++depth) {
      seen_.clear();
      Loop work = loop;
      Trace trace;
      if (dfs(work, trace, depth)) return trace;
      if (nodes_ > node_limit_) break;
    }
    return std::nullopt;
  }

 private:
  struct Key {
    std::vector<Point> verts;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = k.verts.size();
      for (const Point& p : k.verts) h = h * 1000003u ^ p.hash();
      return h;
    }
  };

  bool dfs(const Loop& loop, Trace& trace, std::size_t cells_left) {
    if (loop.length() == 0) return true;
    if (cells_left == 0 || ++nodes_ > node_limit_) return false;
    auto [it, fresh] = seen_.emplace(Key{loop.vertices()}, cells_left);
    if (!fresh) {
      if (it->second >= cells_left) return false;
      it->second = cells_left;
    }
    const BlockedProduct& X = loop.product();
    const std::size_t len = loop.length();
    auto attempt = [&](std::size_t pos, int arc, const Point& third) {
      Loop next = loop;
      Trace t = trace;
      TraceBuilder b(next, t);
      b.cell(pos, arc, third);
      b.reduce_window(0, next.length());
      if (dfs(next, t, cells_left - 1)) {
        trace = std::move(t);
        return true;
      }
      return false;
    };
    for (std::size_t p = 0; p + 3 <= len; ++p) {
      if (loop.vertex(p + 3) == loop.vertex(p) &&
          triangle_from_vertices(X, loop.vertex(p), loop.vertex(p + 1), loop.vertex(p + 2)) &&
          attempt(p, 3, loop.vertex(p + 1)))
        return true;
    }
    for (std::size_t p = 0; p + 2 <= len; ++p) {
      if (triangle_from_vertices(X, loop.vertex(p), loop.vertex(p + 1), loop.vertex(p + 2)) &&
          attempt(p, 2, loop.vertex(p + 1)))
        return true;
    }
    if (cells_left < 2) return false;
    for (std::size_t p = 0; p < len; ++p) {
      if (loop.is_stay(p)) continue;
      const Point u = loop.vertex(p);
      const Point v = loop.vertex(p + 1);
      for (const TriangleCell& cell : triangles_on_edge(X, u, v)) {
        for (const Point& w : cell.vertices(X)) {
          if (w != u && w != v && attempt(p, 1, w)) return true;
        }
      }
    }
    return false;
  }

  std::size_t node_limit_;
  std::size_t nodes_ = 0;
  std::unordered_map<Key, std::size_t, KeyHash> seen_;
};

// Trace filling `loop` after free reduction, choosing the cheapest of the
// candidates and searching only when they exceed `budget`.
template <typename Candidate>
std::optional<Trace> cheapest_fill(const Loop& loop, std::size_t budget, Candidate&& extra, bool* searched) {
  Loop work = loop;
  Trace prefix;
  TraceBuilder b(work, prefix);
  b.reduce_window(0, work.length());
  if (work.length() == 0) return prefix;

  std::optional<Trace> best = best_cone(work);
  if (auto t = extra(work); t && (!best || t->area() < best->area())) best = std::move(t);
  if (!best || best->area() > budget) {
    const std::size_t cap = best ? std::min(budget, best->area() - 1) : budget;
    if (auto t = Searcher(2'000'000).run(work, cap)) {
      best = std::move(t);
      if (searched) *searched = true;
    }
  }
  if (!best || best->area() > budget) return std::nullopt;
  prefix.moves.insert(prefix.moves.end(), best->moves.begin(), best->moves.end());
  return prefix;
}

}  // namespace

BigonFill fill_bigon(const BlockedProduct& X, const Point& a, const Point& b, const SpanningPath& sigma,
                     std::size_t budget) {
  if (sigma.from != a || sigma.to != b) throw Error("bigon: spanning path has other endpoints");
  std::vector<Point> verts{a};
  verts.insert(verts.end(), sigma.vertices.rbegin(), sigma.vertices.rend());
  const Loop loop = Loop::from_vertices(X, verts);

  BigonFill out;
  // The step equals the path: free reduction alone.
  {
    Loop work = loop;
    Trace t;
    TraceBuilder builder(work, t);
    builder.reduce_window(0, work.length());
    if (work.length() == 0) {
      out.trace = std::move(t);
      return out;
    }
  }

  // The two-block filler, confined by a block the step leaves fixed.
  const int i = sigma.from_line.block_index();
  const int j = sigma.to_line.block_index();
  const int k = 3 - i - j;
  MonotoneLine line = X.same_block_coords(a, b, i)   ? sigma.from_line
                      : X.same_block_coords(a, b, j) ? sigma.to_line
                                                     : X.canonical_line(a, k);
  auto two_block = [&](const Loop& work) -> std::optional<Trace> {
    try {
      return fill_two_block(ConfinedLoop{work, line});
    } catch (const ConfinementError&) {
      return std::nullopt;
    }
  };
  bool searched = false;
  std::optional<std::size_t> two_block_area;
  auto tracked = [&](const Loop& work) {
    auto t = two_block(work);
    if (t) two_block_area = t->area();
    return t;
  };
  auto best = cheapest_fill(loop, budget, tracked, &searched);
  if (!best) {
    throw SearchExhausted("bigon from " + X.format(a) + " to " + X.format(b) + " has no filling of area at most " +
                          std::to_string(budget));
  }
  out.trace = std::move(*best);
  const bool two_block_won = two_block_area && *two_block_area == out.trace.area();
  out.method = searched ? BigonFill::Method::Search
               : out.trace.area() == 0 ? BigonFill::Method::Reduction
               : two_block_won         ? BigonFill::Method::TwoBlock
                                       : BigonFill::Method::Cone;
  return out;
}

Trace fill_small_loop(const Loop& loop, std::size_t budget) {
  const BlockedProduct& X = loop.product();
  auto planes = [&](const Loop& work) -> std::optional<Trace> {
    std::optional<Trace> best;
    for (int b = 0; b < static_cast<int>(X.block_count()); ++b) {
      try {
        Trace t = fill_two_block(ConfinedLoop{work, X.canonical_line(work.base(), b)});
        if (!best || t.area() < best->area()) best = std::move(t);
      } catch (const ConfinementError&) {
      }
    }
    return best;
  };
  auto best = cheapest_fill(loop, budget, planes, nullptr);
  if (!best) throw SearchExhausted("no filling of area at most " + std::to_string(budget) + " found");
  return std::move(*best);
}

double template_area_bound(int k) {
  const double C = 2, B = 8, alpha = 2;
  return (28 * C + B / 4 + 1) * std::pow(12.0, 4 * alpha) * std::pow(2.0, k * alpha);
}

double quadratic_constant() { return template_area_bound(0) * 4.0 / 9.0; }

namespace {

// Spanning paths of template edges, built once from the lower position to the
// higher and reversed on demand.
class SideCache {
 public:
  SideCache(const BlockedProduct& X, const TemplateDisk& T, const Loop& padded) : X_(X), T_(T) {
    for (std::size_t pos = 0; pos < T.boundary_size; ++pos) {
      vertex_.push_back(padded.vertex(pos));
      line_.push_back(X.canonical_line(padded.vertex(pos), T.color[pos]));
    }
  }

  SpanningPath get(std::size_t from, std::size_t to) {
    from = T_.wrap(from);
    to = T_.wrap(to);
    const std::size_t lo = std::min(from, to), hi = std::max(from, to);
    auto it = cache_.find({lo, hi});
    if (it == cache_.end()) {
      it = cache_.emplace(std::pair{lo, hi}, spanning_path(X_, vertex_[lo], vertex_[hi], line_[lo], line_[hi],
                                                           Direction::Forward))
               .first;
    }
    return from == lo ? it->second : it->second.reversed();
  }

 private:
  const BlockedProduct& X_;
  const TemplateDisk& T_;
  std::vector<Point> vertex_;
  std::vector<MonotoneLine> line_;
  std::map<std::pair<std::size_t, std::size_t>, SpanningPath> cache_;
};

}  // namespace

LoopFill fill_loop(const Loop& p, const FillOptions& options) {
  const BlockedProduct& X = p.product();
  LoopFill out;
  LoopFillReport& r = out.report;
  r.n = p.length();

  if (p.length() <= 3) {
    out.trace = fill_small_loop(p, options.small_budget);
    r.padded_length = p.length();
    r.area = out.trace.area();
    r.area_bound = static_cast<double>(options.small_budget);
  } else {
    Loop work = p;
    TraceBuilder b(work, out.trace);
    const int k = template_depth(p.length());
    const std::size_t n_hat = std::size_t{3} << k;
    for (std::size_t i = p.length(); i < n_hat; ++i) b.insert_stay(i);
    const Loop padded = work;
    const TemplateDisk T = build_template(k);
    SideCache sides(X, T, padded);
    r.k = k;
    r.padded_length = n_hat;
    r.area_bound = template_area_bound(k);
    r.depth_area.assign(static_cast<std::size_t>(k) + 1, 0);

    // Bigons: each boundary step becomes the spanning path between its ends.
    std::size_t q = 0;
    for (std::size_t i = 0; i < n_hat; ++i) {
      const SpanningPath sigma = sides.get(i, i + 1);
      if (work.is_stay(q)) {
        if (sigma.length() != 0) throw Error("bigon over a stay has a nonconstant spanning path");
        b.reduce(q);
        continue;
      }
      const BigonFill bf = fill_bigon(X, work.vertex(q), work.vertex(q + 1), sigma, options.bigon_budget);
      b.insert_detour(q + 1, std::vector<Point>(sigma.vertices.rbegin(), sigma.vertices.rend()));
      const std::size_t before = b.area();
      for (const Move& m : bf.trace.moves) b.emit(m.shifted(q));
      r.bigon_area += b.area() - before;
      r.max_bigon_area = std::max(r.max_bigon_area, b.area() - before);
      q += sigma.length();
    }

    // Depth k down to 1: each triangle's two outer sides become its inner side.
    std::vector<std::size_t> corners(n_hat);
    for (std::size_t i = 0; i < n_hat; ++i) corners[i] = i;
    auto solve = [&](std::size_t at, std::size_t first, std::size_t mid, std::size_t last, int depth,
                     std::array<std::size_t, 3> surrogates) {
      std::array<SpanningPath, 3> tri_sides{sides.get(first, mid), sides.get(mid, last), sides.get(last, first)};
      if (surrogates[0] + surrogates[1] + surrogates[2] > (std::size_t{1} << (k - depth + 2))) {
        throw Error("template triangle at depth " + std::to_string(depth) + " exceeds its taut perimeter bound");
      }
      SpanningTriangle tri = build_spanning_triangle(X, std::move(tri_sides), surrogates);
      const std::size_t before = b.area();
      if (depth > 0) {
        const std::size_t outer = tri.sides[0].length() + tri.sides[1].length();
        b.insert_detour(at + outer, tri.sides[2].vertices);
      }
      fill_spanning_triangle(b, at, tri);
      r.depth_area[static_cast<std::size_t>(depth)] += b.area() - before;
    };
    for (int depth = k; depth >= 1; --depth) {
      std::vector<std::size_t> next_corners;
      std::size_t at = 0;
      for (std::size_t t = 0; t + 1 < corners.size(); t += 2) {
        const std::size_t first = corners[t], mid = corners[t + 1];
        const std::size_t last = t + 2 < corners.size() ? corners[t + 2] : n_hat;
        solve(at, first, mid, last, depth, {mid - first, last - mid, last - first});
        const std::size_t len = sides.get(first, last).length();
        next_corners.push_back(first);
        at += len;
      }
      corners = std::move(next_corners);
    }
    const std::size_t third = n_hat / 3;
    solve(0, 0, third, 2 * third, 0, {third, third, third});
    if (work.length() != 0) throw Error("template assembly left " + std::to_string(work.length()) + " steps");
    r.area = b.area();
  }

  if (options.verify) {
    const FillReport v = verify(p, out.trace);
    r.verified = v.verified && v.area == r.area;
    r.message = v.verified && v.area != r.area ? "area accounting mismatch" : v.message;
  }
  return out;
}

}  // namespace bbfill
