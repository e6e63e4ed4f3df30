#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bbfill/template.hpp"

namespace bbfill {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Loop file text:
///
///   complex [F2],[F2],[F2]
///   base 1 1 1          # optional, one reduced word per tree
///   u1:a d2:A           # tree 1 up by a, tree 2 down by A
///   stay
///
/// Tree indices are 1-based; `#` starts a comment.
std::string serialize_loop(const Loop& loop);

/// Parses a loop over an existing complex; the header must name the same spec.
Loop parse_loop(const BlockedProduct& X, std::string_view text);

/// Block spec named by a loop file's `complex` line.
BlockSpec parse_loop_header(std::string_view text);

/// A complex together with a loop over it, for callers that start from text.
struct LoopDocument {
  std::unique_ptr<BlockedProduct> complex;
  std::unique_ptr<Loop> loop;
};

LoopDocument read_loop(std::string_view text);

/// Trace text, one move per line:
///
///   T <pos> <slice> <t>:<bottom>:<letter> <t>:<bottom>:<letter> <t>:<bottom>:<letter> <arc>
///   R <pos>
///   I <pos> u<t>:<l> d<t>:<l>      or      I <pos> stay
std::string serialize_trace(const BlockedProduct& X, const Trace& trace);
Trace parse_trace(const BlockedProduct& X, std::string_view text);

/// Side-m lattice hexagon in the plane of the canonical lines through the identity.
Loop gen_hexagon(const BlockedProduct& X, int m);

/// Seeded random walk of ceil(n/2) steps from the identity, closed by the
/// spanning path back (walk end colored 1, base colored 2, canonical lines,
/// Forward), with walk steps dropped from the end until the length is at most n.
Loop gen_random(const BlockedProduct& X, std::size_t n, std::uint64_t seed);

struct ExperimentConfig {
  std::string spec = "[F2],[F2],[F2]";
  std::string family = "random";
  std::vector<std::size_t> lengths;
  std::size_t samples = 1;
  std::uint64_t seed = 1;
  /// Writes 0 to the seconds column so the CSV is byte-identical across runs.
  bool record_time = true;
};

struct ExperimentRow {
  std::string family;
  std::size_t target = 0;
  std::size_t sample = 0;
  std::size_t n = 0;
  std::size_t area = 0;
  int k = 0;
  bool verified = false;
  double seconds = 0;
};

struct ExperimentSummary {
  /// Least-squares slope of log2(median area) against log2(median n) per schedule entry.
  double slope = 0;
  double max_area_over_n2 = 0;
  bool all_verified = true;
  std::size_t rows = 0;
};

class ExperimentFailure : public Error {
 public:
  ExperimentFailure(const std::string& what, std::string loop_text)
      : Error(what), loop_text_(std::move(loop_text)) {}
  /// The offending loop, serialized for replay.
  const std::string& loop_text() const { return loop_text_; }

 private:
  std::string loop_text_;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  ExperimentSummary summary;
};

/// Runs every (length, sample) in schedule order. Throws ExperimentFailure on
/// the first unverified trace.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::function<void(const ExperimentRow&)>& on_row = {});

std::string experiment_csv(const std::vector<ExperimentRow>& rows);
ExperimentSummary summarize(const std::vector<ExperimentRow>& rows);
std::string format_summary(const ExperimentSummary& s);

/// Slope of the least-squares line through (x_i, y_i).
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bbfill
