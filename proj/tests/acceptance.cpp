// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <unordered_set>

#include "oracles.hpp"

#include "bbfill/harness.hpp"
#include "bbfill/subfill.hpp"

using namespace bbfill;

namespace {

constexpr double kMaxSlope = 2.25;
constexpr double kSmallSeconds = 10.0;
constexpr double kLargeSeconds = 120.0;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Worst area / (K n^2) over every fill in the run.
double worst_bound_ratio = 0;
std::size_t fills_checked = 0;

void record_area(std::size_t n, std::size_t area) {
  ++fills_checked;
  if (n == 0) return;
  const double ratio = static_cast<double>(area) / (quadratic_constant() * static_cast<double>(n * n));
  worst_bound_ratio = std::max(worst_bound_ratio, ratio);
}

struct TimedFill {
  bool verified = false;
  std::size_t area = 0;
  double seconds = 0;
  std::string message;
};

TimedFill timed_fill(const Loop& loop) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoopFill fill = fill_loop(loop, {.verify = false});
  // Independent replay of the trace.
  const FillReport r = verify(loop, fill.trace);
  TimedFill out;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.verified = r.verified;
  out.area = r.area;
  out.message = r.message;
  record_area(loop.length(), r.area);
  return out;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void soundness() {
  BlockedProduct X("[F2],[F2],[F2]");
  std::mt19937_64 rng(20240601);
  std::size_t ok_small = 0, ok_large = 0, max_n = 0;
  double slow_small = 0, slow_large = 0;
  std::string first_failure;
  for (int i = 0; i < 120; ++i) {
    const bool small = i < 100;
    const std::size_t target = small ? 4 + rng() % 93 : 97 + rng() % 288;
    const Loop loop = gen_random(X, target, rng());
    max_n = std::max(max_n, loop.length());
    const TimedFill f = timed_fill(loop);
    (small ? slow_small : slow_large) = std::max(small ? slow_small : slow_large, f.seconds);
    const bool within = f.seconds < (small ? kSmallSeconds : kLargeSeconds);
    if (f.verified && within) {
      ++(small ? ok_small : ok_large);
    } else if (first_failure.empty()) {
      first_failure = fmt(" first failure n=%zu: %s", loop.length(), f.verified ? "too slow" : f.message.c_str());
    }
  }
  report(1, "soundness", ok_small == 100 && ok_large == 20,
         fmt("%zu/100 loops n<=96 and %zu/20 loops n<=384 verified (max n=%zu); slowest %.3fs (limit %.0fs) and "
             "%.3fs (limit %.0fs)%s",
             ok_small, ok_large, max_n, slow_small, kSmallSeconds, slow_large, kLargeSeconds, first_failure.c_str()));
}

void quadratic_upper_bound() {
  ExperimentConfig cfg;
  cfg.lengths = {12, 24, 48, 96, 192, 384};
  cfg.samples = 5;
  cfg.seed = 7;
  cfg.record_time = false;
  bool verified = true;
  std::string slope_detail;
  double slope = 0;
  try {
    const ExperimentResult r = run_experiment(cfg);
    for (const ExperimentRow& row : r.rows) record_area(row.n, row.area);
    slope = r.summary.slope;
    verified = r.summary.all_verified;
  } catch (const Error& e) {
    verified = false;
    slope_detail = std::string(" error: ") + e.what();
  }
  const bool bound_ok = worst_bound_ratio <= 1.0;
  report(2, "quadratic upper bound", verified && bound_ok && slope <= kMaxSlope,
         fmt("max area/(K n^2) = %.3g over %zu fills (K = %.6g); log-log slope %.4f (limit %.2f) on "
             "n in {12..384}, 5 samples each%s",
             worst_bound_ratio, fills_checked, quadratic_constant(), slope, kMaxSlope, slope_detail.c_str()));
}

void quadratic_lower_bound() {
  BlockedProduct X("[F2],[F2],[F2]");
  bool ok = true;
  std::string detail;
  for (int m : {1, 2, 4, 8}) {
    const std::size_t a = plane_min_area(gen_hexagon(X, m));
    ok = ok && a == static_cast<std::size_t>(6 * m * m);
    detail += fmt("m=%d: %zu (expect %d, area/n^2=%.4f) ", m, a, 6 * m * m, static_cast<double>(a) / (36.0 * m * m));
  }
  report(3, "quadratic lower bound witness", ok, detail);
}

void line_embedding() {
  BlockedProduct X("[F2],[F2],[F2]");
  bool ok = true;
  std::string detail;
  for (int b = 0; b < 3; ++b) {
    const oracle::EmbeddingCheck r = oracle::check_embedding(X, b, 3);
    ok = ok && r.failure.empty();
    detail += fmt("L in block %d: %zu vertices, %zu edges, %zu triangles%s; ", b + 1, r.vertices, r.edges, r.triangles,
                  r.failure.empty() ? "" : (" FAILED " + r.failure).c_str());
  }
  report(4, "line embedding", ok, detail + "radius 3, exhaustive");
}

// The first `count` level-set edges reached by breadth-first search from the identity.
std::vector<std::pair<Point, Point>> first_edges(const BlockedProduct& X, std::size_t count) {
  std::vector<std::pair<Point, Point>> out;
  std::deque<Point> queue{X.identity()};
  std::unordered_set<Point, PointHash> seen{X.identity()};
  while (!queue.empty() && out.size() < count) {
    const Point p = queue.front();
    queue.pop_front();
    for (const LevelEdge& e : X.neighbors(p)) {
      const Point q = *X.apply(p, e.step);
      if (out.size() < count) out.emplace_back(p, q);
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  return out;
}

struct BigonStats {
  std::size_t bigons = 0, failed = 0, max_area = 0;
  std::map<std::size_t, std::size_t> areas;
};

BigonStats bigon_sweep(const BlockedProduct& X, std::size_t edges) {
  BigonStats s;
  auto one = [&](const Point& a, const Point& b, int i, int j, Direction d) {
    ++s.bigons;
    try {
      const SpanningPath sigma = spanning_path(X, a, b, X.canonical_line(a, i), X.canonical_line(b, j), d);
      const BigonFill fill = fill_bigon(X, a, b, sigma);
      std::vector<Point> verts{a};
      if (b != a) verts.push_back(b);
      verts.insert(verts.end(), sigma.vertices.rbegin() + 1, sigma.vertices.rend());
      if (!verify(Loop::from_vertices(X, verts), fill.trace).verified) {
        ++s.failed;
        return;
      }
      s.max_area = std::max(s.max_area, fill.area());
      ++s.areas[fill.area()];
    } catch (const Error&) {
      ++s.failed;
    }
  };
  for (const auto& [a, b] : first_edges(X, edges)) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        for (Direction d : {Direction::Forward, Direction::Backward}) one(a, b, i, j, d);
      }
    }
  }
  return s;
}

std::string histogram(const BigonStats& s) {
  std::string out;
  for (const auto& [area, count] : s.areas) out += fmt("%zu:%zu ", area, count);
  return out;
}

void bigon_areas() {
  BlockedProduct X3("[F2],[F2],[F2]");
  const BigonStats s3 = bigon_sweep(X3, 500);
  const bool cases = s3.areas.count(0) && s3.areas.count(1) && s3.areas.count(2) && s3.areas.count(4);
  BlockedProduct X4("[F2,F2],[F2],[F2]");
  const BigonStats s4 = bigon_sweep(X4, 500);
  report(5, "bigon areas", s3.failed == 0 && s3.max_area <= 4 && cases && s4.failed == 0 && s4.max_area <= 8,
         fmt("[F2],[F2],[F2]: %zu bigons (500 edges x 6 color pairs x 2 directions), %zu failed, areas {%s}, max %zu (limit 4); "
             "[F2,F2],[F2],[F2]: %zu bigons, %zu failed, areas {%s}, max %zu (limit 8)",
             s3.bigons, s3.failed, histogram(s3).c_str(), s3.max_area, s4.bigons, s4.failed, histogram(s4).c_str(),
             s4.max_area));
}

void template_combinatorics() {
  bool ok = true;
  std::string first;
  auto check = [&](bool c, int k, const char* what) {
    if (!c && ok) first = fmt(" (k=%d: %s)", k, what);
    ok = ok && c;
  };
  for (int k = 0; k <= 10; ++k) {
    const TemplateDisk T = build_template(k);
    const std::size_t n = 3u << k;
    check(T.triangles.size() == n - 2, k, "triangle count");
    check(T.triangles_at_depth(0) == 1, k, "central triangle");
    for (int d = 1; d <= k; ++d) check(T.triangles_at_depth(d) == (3u << (d - 1)), k, "depth count");
    for (auto [u, v] : T.edges()) check(T.color[u] != T.color[v], k, "coloring");
    for (const TemplateTriangle& t : T.triangles) {
      const std::size_t arc = t.depth == 0 ? n / 3 : std::size_t{1} << (k - t.depth);
      check(t.mid - t.first == arc && t.last - t.mid == arc, k, "arc length");
      check(t.last - t.first == 2 * arc, k, "long side");
    }
  }
  report(6, "template combinatorics", ok,
         "k=0..10: 3*2^k-2 triangles, 3*2^(i-1) at depth i, proper 3-coloring, depth-i sides subtend 2^(k-i)" + first);
}

void metric_inequality() {
  BlockedProduct X("[F2],[F2],[F2]");
  std::mt19937_64 rng(41);
  std::size_t violations = 0;
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + rng() % 24;
    const Point u = oracle::random_walk(X, X.identity(), rng() % 8, rng);
    const Point v = oracle::random_walk(X, u, m, rng);
    std::size_t sum = 0;
    for (int b = 0; b < 3; ++b) sum += X.block_distance(u, v, b);
    if (sum > 2 * m) ++violations;
    worst = std::max(worst, static_cast<double>(sum) / static_cast<double>(2 * m));
  }
  report(7, "metric inequality", violations == 0,
         fmt("1000 random-walk pairs, %zu violations, max (d1+d2+d3)/2m = %.3f", violations, worst));
}

bool within_block(const std::optional<EdgeStep>& s, const BlockedProduct& X) {
  return s && X.block_of(s->up.tree) == X.block_of(s->down.tree);
}

void generality() {
  BlockedProduct X("[F2,F2],[F2],[F2]");
  std::size_t ok = 0, within = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Loop loop = gen_random(X, 4 + (seed * 11) % 45, seed);
    const TimedFill f = timed_fill(loop);
    if (f.verified && loop.length() <= 48) {
      ++ok;
    } else if (first.empty()) {
      first = " first failure: " + f.message;
    }
    for (std::size_t i = 0; i < loop.length(); ++i) within += within_block(loop.step(i), X);
    const LoopFill fill = fill_loop(loop, {.verify = false});
    for (const Move& m : fill.trace.moves) within += m.kind == MoveKind::Insert && !m.stay && within_block(m.edge(), X);
  }
  report(8, "two-tree block", ok == 20 && within > 0,
         fmt("%zu/20 loops n<=48 verified; %zu within-block edges in loops and inserted detours%s", ok, within,
             first.c_str()));
}

}  // namespace

int main() {
  soundness();
  quadratic_upper_bound();
  quadratic_lower_bound();
  line_embedding();
  bigon_areas();
  template_combinatorics();
  metric_inequality();
  generality();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
