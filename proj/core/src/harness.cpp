#include "bbfill/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

namespace bbfill {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

// Splits a line into whitespace-separated tokens, dropping any `#` comment.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::size_t parse_index(std::string_view s, std::size_t line, std::size_t column, const char* what) {
  if (s.empty()) throw ParseError(line, column, std::string("missing ") + what);
  std::size_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError(line, column + i, std::string("expected digits in ") + what);
    }
    v = v * 10 + static_cast<std::size_t>(s[i] - '0');
    if (v > 0xffffffffu) throw ParseError(line, column, std::string(what) + " is too large");
  }
  return v;
}

// 1-based tree index in range; returns the 0-based index.
int parse_tree(const BlockedProduct& X, std::string_view s, std::size_t line, std::size_t column) {
  const std::size_t t = parse_index(s, line, column, "tree index");
  if (t < 1 || t > X.tree_count()) {
    throw ParseError(line, column,
                     "tree index " + std::to_string(t) + " outside 1.." + std::to_string(X.tree_count()));
  }
  return static_cast<int>(t - 1);
}

Letter parse_letter(const BlockedProduct& X, int tree, std::string_view s, std::size_t line, std::size_t column) {
  if (s.size() != 1 || !std::isalpha(static_cast<unsigned char>(s[0]))) {
    throw ParseError(line, column, "expected a single letter");
  }
  const Letter l = Letter::from_char(s[0]);
  if (!X.tree(tree).valid_letter(l)) {
    throw ParseError(line, column,
                     "letter '" + std::string(s) + "' exceeds the rank of tree " + std::to_string(tree + 1));
  }
  return l;
}

// `u<t>:<l>` or `d<t>:<l>`.
TreeMove parse_tree_move(const BlockedProduct& X, const Token& tok, char kind, std::size_t line) {
  const std::string_view s = tok.text;
  if (s.empty() || s[0] != kind) {
    throw ParseError(line, tok.column, std::string("expected '") + kind + "<tree>:<letter>'");
  }
  const std::size_t colon = s.find(':');
  if (colon == std::string_view::npos) throw ParseError(line, tok.column + s.size(), "missing ':'");
  const int t = parse_tree(X, s.substr(1, colon - 1), line, tok.column + 1);
  const Letter l = parse_letter(X, t, s.substr(colon + 1), line, tok.column + colon + 1);
  if (kind == 'u' && !l.is_generator()) {
    throw ParseError(line, tok.column + colon + 1, "an up move needs a generator (lowercase letter)");
  }
  if (kind == 'd' && l.is_generator()) {
    throw ParseError(line, tok.column + colon + 1, "a down move needs an inverse (uppercase letter)");
  }
  return TreeMove{t, l};
}

std::optional<EdgeStep> parse_edge(const BlockedProduct& X, std::span<const Token> toks, std::size_t line) {
  if (toks.size() == 1 && toks[0].text == "stay") return std::nullopt;
  if (toks.size() != 2) {
    throw ParseError(line, toks.empty() ? 1 : toks[0].column, "expected 'u<tree>:<letter> d<tree>:<letter>' or 'stay'");
  }
  EdgeStep step{parse_tree_move(X, toks[0], 'u', line), parse_tree_move(X, toks[1], 'd', line)};
  if (step.up.tree == step.down.tree) throw ParseError(line, toks[1].column, "up and down moves share a tree");
  return step;
}

std::string format_tree_move(const BlockedProduct&, const TreeMove& m, char kind) {
  return std::string(1, kind) + std::to_string(m.tree + 1) + ":" + m.letter.to_char();
}

std::string format_edge(const BlockedProduct& X, const std::optional<EdgeStep>& s) {
  if (!s) return "stay";
  return format_tree_move(X, s->up, 'u') + " " + format_tree_move(X, s->down, 'd');
}

}  // namespace

std::string serialize_loop(const Loop& loop) {
  const BlockedProduct& X = loop.product();
  std::ostringstream out;
  out << "complex " << X.spec().to_string() << '\n';
  if (loop.base() != X.identity()) {
    out << "base";
    for (std::size_t t = 0; t < X.tree_count(); ++t) out << ' ' << X.tree(static_cast<int>(t)).word(loop.base()[t]);
    out << '\n';
  }
  for (std::size_t i = 0; i < loop.length(); ++i) out << format_edge(X, loop.step(i)) << '\n';
  return out.str();
}

namespace {

BlockSpec parse_header_line(std::string_view text, const std::vector<Token>& toks, std::size_t line) {
  if (toks[0].text != "complex") throw ParseError(line, toks[0].column, "expected 'complex <block-spec>' header");
  if (toks.size() < 2) throw ParseError(line, toks[0].column + 7, "missing block spec");
  // The block spec may contain spaces; take the rest of the line up to a comment.
  std::string_view rest = text.substr(toks[1].column - 1);
  rest = rest.substr(0, rest.find('#'));
  try {
    return BlockSpec::parse(rest);
  } catch (const Error& e) {
    throw ParseError(line, toks[1].column, e.what());
  }
}

}  // namespace

BlockSpec parse_loop_header(std::string_view text) {
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto toks = tokenize(lines[ln]);
    if (!toks.empty()) return parse_header_line(lines[ln], toks, ln + 1);
  }
  throw ParseError(1, 1, "missing 'complex <block-spec>' header");
}

Loop parse_loop(const BlockedProduct& X, std::string_view text) {
  const auto lines = split_lines(text);
  bool header = false;
  Point base = X.identity();
  std::vector<std::optional<EdgeStep>> steps;
  std::size_t last_line = 1;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto toks = tokenize(lines[ln]);
    if (toks.empty()) continue;
    const std::size_t line = ln + 1;
    if (!header) {
      const BlockSpec spec = parse_header_line(lines[ln], toks, line);
      if (spec.to_string() != X.spec().to_string()) {
        throw ParseError(line, toks[0].column,
                         "loop is over " + spec.to_string() + " but the complex is " + X.spec().to_string());
      }
      header = true;
      continue;
    }
    if (toks[0].text == "base") {
      if (!steps.empty()) throw ParseError(line, toks[0].column, "'base' must precede the steps");
      std::vector<std::string> words;
      for (std::size_t i = 1; i < toks.size(); ++i) words.emplace_back(toks[i].text);
      try {
        base = X.parse_point(words);
      } catch (const Error& e) {
        throw ParseError(line, toks[0].column, e.what());
      }
      if (X.height(base) != 0) throw ParseError(line, toks[0].column, "base vertex has nonzero height");
      continue;
    }
    steps.push_back(parse_edge(X, toks, line));
    last_line = line;
  }
  if (!header) throw ParseError(1, 1, "missing 'complex <block-spec>' header");
  Point end = base;
  for (const auto& s : steps) {
    if (s) end = *X.apply(end, *s);
  }
  if (end != base) throw ParseError(last_line, 1, "loop does not return to its base, ending at " + X.format(end));
  return Loop::from_steps(X, base, steps);
}

LoopDocument read_loop(std::string_view text) {
  LoopDocument doc;
  doc.complex = std::make_unique<BlockedProduct>(parse_loop_header(text));
  doc.loop = std::make_unique<Loop>(parse_loop(*doc.complex, text));
  return doc;
}

std::string serialize_trace(const BlockedProduct& X, const Trace& trace) {
  std::string out;
  out.reserve(trace.moves.size() * 24);
  for (const Move& m : trace.moves) {
    switch (m.kind) {
      case MoveKind::Cell: {
        out += "T " + std::to_string(m.pos) + ' ' + std::to_string(m.slice);
        for (int i = 0; i < 3; ++i) {
          out += ' ' + std::to_string(m.trees[i] + 1) + ':' + X.tree(m.trees[i]).word(m.bottoms[i]) + ':' +
                 m.letters[i].to_char();
        }
        out += ' ' + std::to_string(m.arc) + '\n';
        break;
      }
      case MoveKind::Reduce:
        out += "R " + std::to_string(m.pos) + '\n';
        break;
      case MoveKind::Insert:
        out += "I " + std::to_string(m.pos) + ' ' +
               format_edge(X, m.stay ? std::nullopt : std::optional<EdgeStep>(m.edge())) + '\n';
        break;
    }
  }
  return out;
}

Trace parse_trace(const BlockedProduct& X, std::string_view text) {
  Trace trace;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto toks = tokenize(lines[ln]);
    if (toks.empty()) continue;
    const std::size_t line = ln + 1;
    if (toks.size() < 2) throw ParseError(line, toks[0].column, "missing position");
    const std::size_t pos = parse_index(toks[1].text, line, toks[1].column, "position");
    const std::string_view kind = toks[0].text;
    if (kind == "R") {
      if (toks.size() != 2) throw ParseError(line, toks[2].column, "unexpected token after 'R <pos>'");
      trace.moves.push_back(Move::reduce(pos));
    } else if (kind == "I") {
      const auto step = parse_edge(X, std::span<const Token>(toks).subspan(2), line);
      trace.moves.push_back(step ? Move::insert(pos, *step) : Move::insert_stay(pos));
    } else if (kind == "T") {
      if (toks.size() != 7) throw ParseError(line, toks[0].column, "expected 'T <pos> <slice> t:w:l t:w:l t:w:l <arc>'");
      Move m;
      m.kind = MoveKind::Cell;
      m.pos = static_cast<std::uint32_t>(pos);
      const std::size_t slice = parse_index(toks[2].text, line, toks[2].column, "slice");
      if (slice != 1 && slice != 2) throw ParseError(line, toks[2].column, "slice must be 1 or 2");
      m.slice = static_cast<std::uint8_t>(slice);
      for (int i = 0; i < 3; ++i) {
        const Token& tok = toks[3 + static_cast<std::size_t>(i)];
        const std::size_t c1 = tok.text.find(':');
        const std::size_t c2 = c1 == std::string_view::npos ? c1 : tok.text.find(':', c1 + 1);
        if (c2 == std::string_view::npos) throw ParseError(line, tok.column, "expected '<tree>:<bottom>:<letter>'");
        const int t = parse_tree(X, tok.text.substr(0, c1), line, tok.column);
        std::string_view word = tok.text.substr(c1 + 1, c2 - c1 - 1);
        try {
          m.bottoms[i] = X.tree(t).intern(word.empty() ? "1" : word);
        } catch (const Error& e) {
          throw ParseError(line, tok.column + c1 + 1, e.what());
        }
        m.trees[i] = static_cast<std::int8_t>(t);
        m.letters[i] = parse_letter(X, t, tok.text.substr(c2 + 1), line, tok.column + c2 + 1);
      }
      const std::size_t arc = parse_index(toks[6].text, line, toks[6].column, "arc length");
      if (arc < 1 || arc > 3) throw ParseError(line, toks[6].column, "arc length must be 1, 2 or 3");
      m.arc = static_cast<std::uint8_t>(arc);
      trace.moves.push_back(m);
    } else {
      throw ParseError(line, toks[0].column, "unknown move '" + std::string(kind) + "'");
    }
  }
  return trace;
}

Loop gen_hexagon(const BlockedProduct& X, int m) {
  if (m < 1) throw Error("hexagon side must be positive");
  // Block height changes along the six sides.
  static constexpr int kSides[6][3] = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}};
  std::vector<std::optional<EdgeStep>> steps;
  for (const auto& d : kSides) {
    TreeMove up, down;
    for (int b = 0; b < 3; ++b) {
      if (d[b] > 0) up = TreeMove{X.first_tree(b), Letter(1)};
      if (d[b] < 0) down = TreeMove{X.first_tree(b), Letter(-1)};
    }
    for (int s = 0; s < m; ++s) steps.push_back(EdgeStep{up, down});
  }
  return Loop::from_steps(X, X.identity(), steps);
}

Loop gen_random(const BlockedProduct& X, std::size_t n, std::uint64_t seed) {
  if (n < 4) throw Error("random loops need n >= 4");
  std::mt19937_64 rng(seed);
  const Point base = X.identity();
  std::vector<Point> walk{base};
  for (std::size_t s = 0; s < (n + 1) / 2; ++s) {
    const auto next = X.neighbors(walk.back());
    const LevelEdge& e = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
    walk.push_back(*X.apply(e.source, e.step));
  }
  const MonotoneLine home = X.canonical_line(base, 1);
  for (;;) {
    const SpanningPath close =
        spanning_path(X, walk.back(), base, X.canonical_line(walk.back(), 0), home, Direction::Forward);
    if (walk.size() - 1 + close.length() <= n || walk.size() == 1) {
      walk.insert(walk.end(), close.vertices.begin() + 1, close.vertices.end());
      return Loop::from_vertices(X, walk);
    }
    walk.pop_back();
  }
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t target, std::size_t sample) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(target), static_cast<std::uint32_t>(sample)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

}  // namespace

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return 0;
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

ExperimentSummary summarize(const std::vector<ExperimentRow>& rows) {
  ExperimentSummary s;
  s.rows = rows.size();
  std::map<std::pair<std::string, std::size_t>, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& r : rows) {
    s.all_verified = s.all_verified && r.verified;
    if (r.n > 0) {
      s.max_area_over_n2 = std::max(s.max_area_over_n2, static_cast<double>(r.area) / static_cast<double>(r.n * r.n));
    }
    auto& g = groups[{r.family, r.target}];
    g.first.push_back(static_cast<double>(r.n));
    g.second.push_back(static_cast<double>(r.area));
  }
  std::vector<double> lx, ly;
  for (const auto& [key, g] : groups) {
    const double n = median(g.first), a = median(g.second);
    if (n > 0 && a > 0) {
      lx.push_back(std::log2(n));
      ly.push_back(std::log2(a));
    }
  }
  s.slope = fit_slope(lx, ly);
  return s;
}

std::string format_summary(const ExperimentSummary& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "rows=%zu verified=%s slope=%.4f max_area_over_n2=%.4f K=%.6g\n", s.rows,
                s.all_verified ? "true" : "false", s.slope, s.max_area_over_n2, quadratic_constant());
  return buf;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "family,n,area,k,verified,seconds\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%d,%s,%.6f\n", r.family.c_str(), r.n, r.area, r.k,
                  r.verified ? "true" : "false", r.seconds);
    out += buf;
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::function<void(const ExperimentRow&)>& on_row) {
  if (cfg.family != "random" && cfg.family != "hexagon") throw Error("unknown loop family '" + cfg.family + "'");
  if (cfg.lengths.empty()) throw Error("experiment needs at least one length");
  if (cfg.samples == 0) throw Error("experiment needs at least one sample per length");
  BlockedProduct X(cfg.spec);
  ExperimentResult result;
  for (std::size_t target : cfg.lengths) {
    if (cfg.family == "hexagon" && (target == 0 || target % 6 != 0)) {
      throw Error("hexagon lengths must be positive multiples of 6, got " + std::to_string(target));
    }
    if (cfg.family == "random" && target < 4) throw Error("random loop lengths must be at least 4");
    for (std::size_t sample = 0; sample < cfg.samples; ++sample) {
      const Loop loop = cfg.family == "hexagon" ? gen_hexagon(X, static_cast<int>(target / 6))
                                                : gen_random(X, target, sample_seed(cfg.seed, target, sample));
      const auto t0 = std::chrono::steady_clock::now();
      const LoopFill fill = fill_loop(loop);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ExperimentRow row{cfg.family, target, sample, loop.length(), fill.report.area, fill.report.k,
                        fill.report.verified, cfg.record_time ? seconds : 0.0};
      if (!row.verified) {
        throw ExperimentFailure("unverified trace for " + cfg.family + " loop n=" + std::to_string(loop.length()) +
                                    " sample " + std::to_string(sample) + ": " + fill.report.message,
                                serialize_loop(loop));
      }
      if (on_row) on_row(row);
      result.rows.push_back(std::move(row));
    }
  }
  result.summary = summarize(result.rows);
  return result;
}

}  // namespace bbfill
