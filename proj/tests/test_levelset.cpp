#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "bbfill/levelset.hpp"

using namespace bbfill;

namespace {

std::set<std::string> formatted(const BlockedProduct& X, const std::vector<Point>& pts) {
  std::set<std::string> out;
  for (const Point& p : pts) out.insert(X.format(p));
  return out;
}

}  // namespace

TEST_CASE("neighbor counts and brute-force agreement") {
  std::mt19937_64 rng(1);
  for (auto [spec, degree] : {std::pair{"[F2],[F2],[F2]", 24u}, std::pair{"[F2,F2],[F2],[F2]", 48u}}) {
    BlockedProduct X(spec);
    for (int trial = 0; trial < 40; ++trial) {
      const Point p = oracle::random_walk(X, X.identity(), rng() % 10, rng);
      const auto nbrs = X.neighbors(p);
      CHECK(nbrs.size() == degree);
      std::vector<Point> targets;
      for (const LevelEdge& e : nbrs) {
        CHECK(e.source == p);
        const auto q = X.apply(p, e.step);
        REQUIRE(q);
        CHECK(X.height(*q) == 0);
        CHECK(X.edge_between(p, *q) == e.step);
        CHECK(X.edge_between(*q, p) == e.step.reversed());
        targets.push_back(*q);
      }
      CHECK(formatted(X, targets) == formatted(X, oracle::brute_neighbors(X, p)));
    }
  }
}

TEST_CASE("invalid steps and non-edges") {
  BlockedProduct X("[F2],[F2],[F2]");
  CHECK_FALSE(X.valid_step(EdgeStep{TreeMove{0, Letter(1)}, TreeMove{0, Letter(-1)}}));
  CHECK_FALSE(X.valid_step(EdgeStep{TreeMove{0, Letter(-1)}, TreeMove{1, Letter(1)}}));
  const Point p = *X.apply(X.identity(), EdgeStep{TreeMove{0, Letter(1)}, TreeMove{1, Letter(-1)}});
  const Point q = *X.apply(p, EdgeStep{TreeMove{0, Letter(1)}, TreeMove{2, Letter(-1)}});
  CHECK_FALSE(X.edge_between(X.identity(), q).has_value());
  CHECK_FALSE(X.edge_between(p, p).has_value());
}

TEST_CASE("distances: product metric and level-set breadth-first search") {
  std::mt19937_64 rng(2);
  BlockedProduct X("[F2],[F2],[F2]");
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + rng() % 5;
    const Point u = oracle::random_walk(X, X.identity(), rng() % 4, rng);
    const Point v = oracle::random_walk(X, u, m, rng);
    std::size_t sum = 0;
    for (int b = 0; b < 3; ++b) sum += X.block_distance(u, v, b);
    CHECK(sum == X.product_distance(u, v));
    CHECK(sum <= 2 * m);
    const auto d = oracle::bfs_distance(X, u, v, m);
    REQUIRE(d);
    // Each level edge moves exactly two trees by one.
    CHECK(sum <= 2 * *d);
  }
}

TEST_CASE("a triangle through the identity") {
  BlockedProduct X("[F2],[F2],[F2]");
  const Point o = X.identity();
  const Point a = *X.apply(o, EdgeStep{TreeMove{0, Letter(1)}, TreeMove{1, Letter(-1)}});
  const Point b = *X.apply(o, EdgeStep{TreeMove{0, Letter(1)}, TreeMove{2, Letter(-1)}});
  const auto cell = triangle_from_vertices(X, o, a, b);
  REQUIRE(cell);
  CHECK(valid_triangle(X, *cell));
  // o, a, b share tree 0 at the top: two coordinates at the bottom each.
  CHECK(cell->slice == 2);
  const auto v = cell->vertices(X);
  CHECK(formatted(X, {v[0], v[1], v[2]}) == formatted(X, {o, a, b}));
  for (int i = 0; i < 3; ++i) CHECK(X.edge_between(v[i], v[(i + 1) % 3]).has_value());

  const auto on_oa = triangles_on_edge(X, o, a);
  CHECK(std::find(on_oa.begin(), on_oa.end(), *cell) != on_oa.end());
  for (const TriangleCell& c : on_oa) {
    const auto w = c.vertices(X);
    const auto names = formatted(X, {w[0], w[1], w[2]});
    CHECK(names.count(X.format(o)));
    CHECK(names.count(X.format(a)));
  }
  const Point c = *X.apply(a, EdgeStep{TreeMove{0, Letter(1)}, TreeMove{1, Letter(-1)}});
  CHECK_FALSE(triangle_from_vertices(X, o, a, c).has_value());
}

TEST_CASE("slice-one triangle") {
  BlockedProduct X("[F2],[F2],[F2]");
  const Point o = X.identity();
  const Point a = *X.apply(o, EdgeStep{TreeMove{0, Letter(1)}, TreeMove{2, Letter(-1)}});
  const Point b = *X.apply(o, EdgeStep{TreeMove{1, Letter(1)}, TreeMove{2, Letter(-1)}});
  const auto cell = triangle_from_vertices(X, o, a, b);
  REQUIRE(cell);
  CHECK(cell->slice == 1);
  CHECK(X.edge_between(a, b).has_value());
}

TEST_CASE("points, formatting and canonical lines") {
  BlockedProduct X("[F2,F2],[F2],[F2]");
  CHECK(X.tree_count() == 4);
  CHECK(X.block_of(1) == 0);
  CHECK(X.first_tree(1) == 2);
  const std::vector<std::string> words{"ab", "B", "A", "1"};
  const Point p = X.parse_point(words);
  CHECK(X.height(p) == 0);
  CHECK(X.block_height(p, 0) == 1);
  CHECK(X.parse_point(std::vector<std::string>{"ab", "B", "A", ""}) == p);
  CHECK_THROWS_AS(X.parse_point(std::vector<std::string>{"ab", "B"}), Error);

  const MonotoneLine L = X.canonical_line(p, 0);
  CHECK(X.on_line(p, L));
  Point q = p;
  X.place_on_line(q, L, 3);
  CHECK(X.block_height(q, 0) == 3);
  CHECK(X.on_line(q, L));
  CHECK(q[1] == p[1]);
  CHECK(q[2] == p[2]);
}

TEST_CASE("line embedding is a bijection onto the cells near the line") {
  for (int line_block = 0; line_block < 3; ++line_block) {
    BlockedProduct X("[F2],[F2],[F2]");
    const auto r = oracle::check_embedding(X, line_block, 2);
    CHECK_MESSAGE(r.failure.empty(), r.failure);
    CHECK(r.vertices == 17 * 17);
    CHECK(r.triangles > 0);
  }
  for (int line_block = 0; line_block < 3; ++line_block) {
    BlockedProduct X("[F2,F2],[F2],[F2]");
    const auto r = oracle::check_embedding(X, line_block, 1);
    CHECK_MESSAGE(r.failure.empty(), r.failure);
  }
}

TEST_CASE("transverse steps stay on the line") {
  std::mt19937_64 rng(4);
  BlockedProduct X("[F2],[F3],[F2,F2]");
  for (int b = 0; b < 3; ++b) {
    const MonotoneLine L = X.canonical_line(X.identity(), b);
    const LineEmbedding f(X, L);
    Point p = X.identity();
    for (int s = 0; s < 50; ++s) {
      int t;
      do t = static_cast<int>(rng() % X.tree_count());
      while (!f.active_tree(t));
      const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(X.tree(t).rank()));
      const auto next = X.apply(p, f.transverse_step(p, TreeMove{t, Letter(rng() % 2 ? g : -g)}));
      REQUIRE(next);
      CHECK(X.on_line(*next, L));
      CHECK(f.project(*next) == f.project(f.lift(f.project(*next))));
      p = *next;
    }
  }
}
