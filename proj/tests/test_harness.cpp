#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "bbfill/harness.hpp"
#include "bbfill/subfill.hpp"

using namespace bbfill;

namespace {

std::size_t error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("loop text round trips") {
  for (const char* spec : {"[F2],[F2],[F2]", "[F2,F2],[F2],[F2]"}) {
    BlockedProduct X(spec);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Loop loop = gen_random(X, 4 + seed % 60, seed);
      const std::string text = serialize_loop(loop);
      CHECK(parse_loop(X, text) == loop);
      const LoopDocument doc = read_loop(text);
      CHECK(doc.complex->spec() == X.spec());
      CHECK(serialize_loop(*doc.loop) == text);
    }
  }
}

TEST_CASE("loop text details") {
  BlockedProduct X("[F2],[F2],[F2]");
  const Loop constant = parse_loop(X, "complex [F2],[F2],[F2]\n");
  CHECK(constant.length() == 0);
  CHECK(constant.base() == X.identity());

  const Loop with_comments = parse_loop(X,
                                        "# a bigon\n"
                                        "complex [F2],[F2],[F2]   # three trees\n"
                                        "\n"
                                        "u1:a d2:A\n"
                                        "stay\n"
                                        "u2:a d1:A  # back\n");
  CHECK(with_comments.length() == 3);
  CHECK(with_comments.is_stay(1));

  const Loop based = parse_loop(X, "complex [F2],[F2],[F2]\nbase ab B B\nu3:b d1:B\nu1:b d3:B\n");
  CHECK(X.format(based.base()) == X.format(X.parse_point(std::vector<std::string>{"ab", "B", "B"})));
  CHECK(serialize_loop(based).find("base ab B B") != std::string::npos);
}

TEST_CASE("malformed loops report their line") {
  BlockedProduct X("[F2],[F2],[F2]");
  const std::string head = "complex [F2],[F2],[F2]\n";
  CHECK(error_line([&] { parse_loop(X, head + "u1:a d2:a\n"); }) == 2);
  CHECK(error_line([&] { parse_loop(X, head + "u1:a\n"); }) == 2);
  CHECK(error_line([&] { parse_loop(X, head + "u1:a d1:A\n"); }) == 2);
  CHECK(error_line([&] { parse_loop(X, head + "u4:a d1:A\n"); }) == 2);
  CHECK(error_line([&] { parse_loop(X, head + "u1:c d2:A\n"); }) == 2);
  CHECK(error_line([&] { parse_loop(X, head + "\nu1:a d2:A\n"); }) == 3);
  CHECK(error_line([&] { parse_loop(X, head + "u1:a d2:A\nbase 1 1 1\n"); }) == 3);
  CHECK(error_line([&] { parse_loop(X, head + "base a 1 1\n"); }) == 2);
  CHECK(error_line([&] { parse_loop(X, "u1:a d2:A\n"); }) == 1);
  CHECK(error_line([&] { parse_loop(X, "\n\ncomplex [F2],[F3],[F2]\n"); }) == 3);
  CHECK(error_line([&] { read_loop("complex [F2],[F2]\n"); }) == 1);
  // An open path is rejected at its last step.
  CHECK(error_line([&] { parse_loop(X, head + "u1:a d2:A\nstay\n"); }) == 3);
}

TEST_CASE("trace text round trips and replays") {
  BlockedProduct X("[F2],[F2],[F2]");
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Loop loop = gen_random(X, 4 + rng() % 40, rng());
    const LoopFill fill = fill_loop(loop);
    REQUIRE(fill.report.verified);
    const std::string text = serialize_trace(X, fill.trace);
    const Trace back = parse_trace(X, text);
    CHECK(back == fill.trace);
    CHECK(verify(loop, back).verified);
  }
}

TEST_CASE("malformed traces report their line") {
  BlockedProduct X("[F2],[F2],[F2]");
  CHECK(error_line([&] { parse_trace(X, "R 0\nX 1\n"); }) == 2);
  CHECK(error_line([&] { parse_trace(X, "R\n"); }) == 1);
  CHECK(error_line([&] { parse_trace(X, "R -1\n"); }) == 1);
  CHECK(error_line([&] { parse_trace(X, "I 0 u1:a d2:a\n"); }) == 1);
  CHECK(error_line([&] { parse_trace(X, "T 0 3 1:1:a 2:1:A 3:1:A 3\n"); }) == 1);
  CHECK(error_line([&] { parse_trace(X, "T 0 1 1:1:a 2:1:A 3:1:A 4\n"); }) == 1);
  CHECK(error_line([&] { parse_trace(X, "\nT 0 1 1:1:a 2:1:A 3:1:A\n"); }) == 2);
  CHECK(error_line([&] { parse_trace(X, "T 0 1 1:1:a 2:1:A 3:xy:A 2\n"); }) == 1);
  const Trace ok = parse_trace(X, "T 0 1 1::a 2:1:b 3:a:a 2\n# comment\nI 3 stay\nR 2\n");
  CHECK(ok.size() == 3);
  CHECK(ok.area() == 1);
}

TEST_CASE("generators are deterministic and closed") {
  BlockedProduct X("[F2],[F2],[F2]");
  for (std::size_t n : {4u, 12u, 50u, 200u}) {
    const Loop a = gen_random(X, n, 99);
    CHECK(a == gen_random(X, n, 99));
    CHECK(a.length() <= n);
    CHECK(a.vertex(a.length()) == a.base());
  }
  CHECK_FALSE(gen_random(X, 96, 1) == gen_random(X, 96, 2));
  for (int m = 1; m <= 5; ++m) {
    const Loop h = gen_hexagon(X, m);
    CHECK(h.length() == static_cast<std::size_t>(6 * m));
    CHECK(h == oracle::hexagon(X, m));
  }
}

TEST_CASE("plane oracle agrees with the shoelace formula") {
  BlockedProduct X("[F2],[F2],[F2]");
  for (int m : {1, 2, 4, 8}) {
    const Loop h = gen_hexagon(X, m);
    CHECK(plane_min_area(h) == static_cast<std::size_t>(6 * m * m));
    CHECK(std::labs(oracle::shoelace_triangles(oracle::plane_coords(h))) == 6 * m * m);
  }
  CHECK(plane_min_area(gen_hexagon(X, 3).reversed()) == 54);
}

TEST_CASE("experiments: CSV, determinism and slope fit") {
  ExperimentConfig cfg;
  cfg.lengths = {12, 24, 48};
  cfg.samples = 2;
  cfg.seed = 5;
  cfg.record_time = false;
  std::size_t streamed = 0;
  const ExperimentResult a = run_experiment(cfg, [&](const ExperimentRow&) { ++streamed; });
  const ExperimentResult b = run_experiment(cfg);
  CHECK(streamed == 6);
  CHECK(a.rows.size() == 6);
  CHECK(experiment_csv(a.rows) == experiment_csv(b.rows));
  CHECK(experiment_csv(a.rows).rfind("family,n,area,k,verified,seconds\n", 0) == 0);
  CHECK(a.summary.all_verified);
  CHECK(a.summary.slope > 1.0);
  CHECK(a.summary.slope < 2.25);

  cfg.family = "hexagon";
  cfg.lengths = {6, 12};
  cfg.samples = 1;
  const ExperimentResult h = run_experiment(cfg);
  CHECK(h.rows.size() == 2);
  CHECK(h.rows[1].n == 12);
  cfg.lengths = {10};
  CHECK_THROWS_AS(run_experiment(cfg), Error);
  cfg.family = "spiral";
  CHECK_THROWS_AS(run_experiment(cfg), Error);

  CHECK(fit_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
  CHECK(fit_slope({1}, {1}) == 0.0);
}
