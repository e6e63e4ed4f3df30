#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bbfill/harness.hpp"
#include "bbfill/subfill.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bbfill::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bbfill::Error("cannot write " + path);
  out << text;
}

std::vector<std::size_t> parse_lengths(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const unsigned long long v = std::stoull(item, &used);
    if (used != item.size()) throw bbfill::Error("bad length '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int run_fill(const std::string& spec, const std::string& loop_path, const std::string& trace_out, bool quiet) {
  const bbfill::BlockedProduct X(spec);
  const bbfill::Loop loop = bbfill::parse_loop(X, read_file(loop_path));
  const bbfill::LoopFill fill = bbfill::fill_loop(loop);
  write_file(trace_out, bbfill::serialize_trace(X, fill.trace));
  const auto& r = fill.report;
  if (!quiet) {
    std::fprintf(stderr, "n=%zu padded=%zu k=%d area=%zu bigon_area=%zu verified=%s\n", r.n, r.padded_length, r.k,
                 r.area, r.bigon_area, r.verified ? "true" : "false");
  }
  if (!r.verified) {
    std::fprintf(stderr, "verification failed: %s\n", r.message.c_str());
    return 1;
  }
  return 0;
}

int run_verify(const std::string& loop_path, const std::string& trace_path) {
  const bbfill::LoopDocument doc = bbfill::read_loop(read_file(loop_path));
  const bbfill::Trace trace = bbfill::parse_trace(*doc.complex, read_file(trace_path));
  const bbfill::FillReport r = bbfill::verify(*doc.loop, trace);
  if (r.verified) {
    std::printf("verified area=%zu moves=%zu\n", r.area, trace.size());
    return 0;
  }
  std::printf("rejected");
  if (r.failed_move) std::printf(" at move %zu", *r.failed_move + 1);
  std::printf(": %s\n", r.message.c_str());
  return 1;
}

int run_experiment(bbfill::ExperimentConfig cfg, const std::string& lengths, const std::string& out_path,
                   const std::string& failure_path) {
  cfg.lengths = parse_lengths(lengths);
  try {
    const bbfill::ExperimentResult result = bbfill::run_experiment(cfg, [](const bbfill::ExperimentRow& row) {
      std::fprintf(stderr, "%s n=%zu sample=%zu area=%zu %.3fs\n", row.family.c_str(), row.n, row.sample, row.area,
                   row.seconds);
    });
    write_file(out_path, bbfill::experiment_csv(result.rows));
    std::fputs(bbfill::format_summary(result.summary).c_str(), stderr);
    return result.summary.all_verified ? 0 : 1;
  } catch (const bbfill::ExperimentFailure& e) {
    write_file(failure_path, e.loop_text());
    std::fprintf(stderr, "%s\noffending loop written to %s\n", e.what(), failure_path.c_str());
    return 1;
  }
}

int run_oracle_plane(const std::string& loop_path) {
  const bbfill::LoopDocument doc = bbfill::read_loop(read_file(loop_path));
  std::printf("%zu\n", bbfill::plane_min_area(*doc.loop));
  return 0;
}

int run_generate(const std::string& spec, const std::string& family, std::size_t n, std::uint64_t seed,
                 const std::string& out_path) {
  const bbfill::BlockedProduct X(spec);
  if (family == "hexagon") {
    if (n == 0 || n % 6 != 0) throw bbfill::Error("hexagon length must be a positive multiple of 6");
    write_file(out_path, bbfill::serialize_loop(bbfill::gen_hexagon(X, static_cast<int>(n / 6))));
  } else if (family == "random") {
    write_file(out_path, bbfill::serialize_loop(bbfill::gen_random(X, n, seed)));
  } else {
    throw bbfill::Error("unknown loop family '" + family + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Null-homotopies of loops in level sets of products of trees"};
  app.require_subcommand(1);

  std::string spec = "[F2],[F2],[F2]";
  std::string loop_path, trace_path, out_path = "-";
  bool quiet = false;

  auto* fill = app.add_subcommand("fill", "Fill a loop and write its trace");
  fill->add_option("--complex", spec, "Block spec, e.g. [F2,F2],[F2],[F2]");
  fill->add_option("--loop", loop_path, "Loop file")->required();
  fill->add_option("--trace-out", out_path, "Trace output file ('-' for stdout)");
  fill->add_flag("--quiet", quiet, "Do not print the fill summary");

  auto* verify = app.add_subcommand("verify", "Replay a trace against a loop");
  verify->add_option("--loop", loop_path, "Loop file")->required();
  verify->add_option("--trace", trace_path, "Trace file")->required();

  bbfill::ExperimentConfig cfg;
  std::string lengths, failure_path = "failing_loop.txt";
  bool no_timing = false;
  auto* experiment = app.add_subcommand("experiment", "Fill generated loops and write a CSV of areas");
  experiment->add_option("--complex", cfg.spec, "Block spec");
  experiment->add_option("--family", cfg.family, "Loop family")
      ->check(CLI::IsMember({"hexagon", "random"}));
  experiment->add_option("--lengths", lengths, "Comma-separated loop lengths")->required();
  experiment->add_option("--samples", cfg.samples, "Samples per length");
  experiment->add_option("--seed", cfg.seed, "Base seed");
  experiment->add_option("--out", out_path, "CSV output file ('-' for stdout)");
  experiment->add_option("--failure-out", failure_path, "Where to write a loop whose trace fails");
  experiment->add_flag("--no-timing", no_timing, "Write 0 in the seconds column");

  auto* oracle = app.add_subcommand("oracle-plane", "Minimal area of a loop in the canonical plane");
  oracle->add_option("--loop", loop_path, "Loop file")->required();

  std::string family = "random";
  std::size_t n = 24;
  std::uint64_t seed = 1;
  auto* generate = app.add_subcommand("generate", "Write a generated loop");
  generate->add_option("--complex", spec, "Block spec");
  generate->add_option("--family", family, "Loop family")->check(CLI::IsMember({"hexagon", "random"}));
  generate->add_option("--length", n, "Loop length");
  generate->add_option("--seed", seed, "Seed");
  generate->add_option("--out", out_path, "Output file ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fill) return run_fill(spec, loop_path, out_path, quiet);
    if (*verify) return run_verify(loop_path, trace_path);
    if (*experiment) {
      cfg.record_time = !no_timing;
      return run_experiment(cfg, lengths, out_path, failure_path);
    }
    if (*oracle) return run_oracle_plane(loop_path);
    if (*generate) return run_generate(spec, family, n, seed, out_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
