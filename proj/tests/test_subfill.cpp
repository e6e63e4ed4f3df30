#include "doctest.h"
#include "oracles.hpp"

#include "bbfill/subfill.hpp"

using namespace bbfill;

TEST_CASE("hexagon: plane oracle matches 6m^2 and the shoelace count") {
  BlockedProduct X("[F2],[F2],[F2]");
  for (int m = 1; m <= 6; ++m) {
    const Loop hex = oracle::hexagon(X, m);
    CHECK(hex.length() == static_cast<std::size_t>(6 * m));
    CHECK(plane_min_area(hex) == static_cast<std::size_t>(6 * m * m));
    CHECK(std::labs(oracle::shoelace_triangles(oracle::plane_coords(hex))) == 6 * m * m);
    CHECK(plane_min_area(hex.reversed()) == static_cast<std::size_t>(6 * m * m));
  }
}

TEST_CASE("two-block filler verifies on hexagons and stays above the plane minimum") {
  BlockedProduct X("[F2],[F2],[F2]");
  for (int m = 1; m <= 8; ++m) {
    const Loop hex = oracle::hexagon(X, m);
    for (int b = 0; b < 3; ++b) {
      const Trace t = fill_two_block(ConfinedLoop{hex, X.canonical_line(X.identity(), b)});
      const FillReport r = verify(hex, t);
      CHECK_MESSAGE(r.verified, r.message);
      CHECK(r.area == t.area());
      CHECK(t.area() >= plane_min_area(hex));
      CHECK(t.area() <= two_block_area_bound(hex.length()));
    }
  }
}

TEST_CASE("two-block filler on random confined loops") {
  std::mt19937_64 rng(7);
  for (const char* spec : {"[F2],[F2],[F2]", "[F2,F2],[F2],[F2]", "[F3],[F2,F2],[F2]"}) {
    BlockedProduct X(spec);
    for (int trial = 0; trial < 40; ++trial) {
      const int b = static_cast<int>(rng() % 3);
      const Loop loop = oracle::random_two_block(X, b, 4 + rng() % 20, 3, rng);
      const Trace t = fill_two_block(ConfinedLoop{loop, X.canonical_line(X.identity(), b)});
      const FillReport r = verify(loop, t);
      REQUIRE_MESSAGE(r.verified, r.message);
      CHECK(t.area() <= two_block_area_bound(loop.length()));
      const FillReport rr = verify(loop.reversed(), reverse(loop, t));
      CHECK_MESSAGE(rr.verified, rr.message);
      CHECK(rr.area == r.area);
    }
  }
}

TEST_CASE("plane loops filled in two blocks are never below the lattice minimum") {
  std::mt19937_64 rng(11);
  BlockedProduct X("[F2],[F2],[F2]");
  for (int trial = 0; trial < 60; ++trial) {
    const Loop loop = oracle::random_two_block(X, 0, 2 + rng() % 16, 1, rng);
    const Trace t = fill_two_block(ConfinedLoop{loop, X.canonical_line(X.identity(), 0)});
    CHECK(verify(loop, t).verified);
    CHECK(t.area() >= plane_min_area(loop));
  }
}

TEST_CASE("confinement violations are reported") {
  BlockedProduct X("[F2],[F2],[F2]");
  const Point p = X.apply(X.apply(X.identity(), TreeMove{0, Letter(2)}), TreeMove{1, Letter(-1)});
  const std::vector<Point> verts{X.identity(), p, X.identity()};
  const Loop loop = Loop::from_vertices(X, verts);
  CHECK_THROWS_AS(fill_two_block(ConfinedLoop{loop, X.canonical_line(X.identity(), 0)}), ConfinementError);
  CHECK(verify(loop, fill_two_block(ConfinedLoop{loop, X.canonical_line(X.identity(), 2)})).verified);
}
