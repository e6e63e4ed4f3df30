#include "bbfill/levelset.hpp"

#include <algorithm>
#include <sstream>

namespace bbfill {

BlockedProduct::BlockedProduct(const BlockSpec& spec) : spec_(spec) {
  if (spec_.ranks.size() != 3) throw Error("a blocked product needs exactly three blocks");
  blocks_.reserve(spec_.ranks.size());
  for (std::size_t b = 0; b < spec_.ranks.size(); ++b) {
    std::vector<HeightedTree> trees;
    block_first_.push_back(static_cast<int>(tree_block_.size()));
    for (std::size_t i = 0; i < spec_.ranks[b].size(); ++i) {
      trees.emplace_back(spec_.ranks[b][i]);
      tree_block_.push_back(static_cast<int>(b));
      tree_local_.push_back(static_cast<int>(i));
    }
    blocks_.emplace_back(std::move(trees));
  }
  if (tree_block_.size() > kMaxTrees) {
    throw Error("at most " + std::to_string(kMaxTrees) + " trees are supported");
  }
}

const HeightedTree& BlockedProduct::tree(int t) const {
  const auto i = static_cast<std::size_t>(t);
  return blocks_[static_cast<std::size_t>(tree_block_[i])].tree(static_cast<std::size_t>(tree_local_[i]));
}

int BlockedProduct::height(const Point& p) const {
  int h = 0;
  for (std::size_t t = 0; t < tree_count(); ++t) h += tree(static_cast<int>(t)).height(p[t]);
  return h;
}

int BlockedProduct::block_height(const Point& p, int b) const {
  int h = 0;
  const int first = first_tree(b);
  for (int t = first; t < first + static_cast<int>(block_size(b)); ++t) {
    h += tree(t).height(p[static_cast<std::size_t>(t)]);
  }
  return h;
}

std::vector<WordId> BlockedProduct::block_coords(const Point& p, int b) const {
  std::vector<WordId> out(block_size(b));
  const auto first = static_cast<std::size_t>(first_tree(b));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[first + i];
  return out;
}

void BlockedProduct::set_block_coords(Point& p, int b, std::span<const WordId> coords) const {
  const auto first = static_cast<std::size_t>(first_tree(b));
  for (std::size_t i = 0; i < block_size(b); ++i) p[first + i] = coords[i];
}

bool BlockedProduct::same_block_coords(const Point& u, const Point& v, int b) const {
  const auto first = static_cast<std::size_t>(first_tree(b));
  for (std::size_t i = 0; i < block_size(b); ++i) {
    if (u[first + i] != v[first + i]) return false;
  }
  return true;
}

Point BlockedProduct::apply(const Point& p, TreeMove m) const {
  Point q = p;
  const auto t = static_cast<std::size_t>(m.tree);
  q[t] = tree(m.tree).mul(p[t], m.letter);
  return q;
}

bool BlockedProduct::valid_step(const EdgeStep& s) const {
  const int n = static_cast<int>(tree_count());
  if (s.up.tree < 0 || s.up.tree >= n || s.down.tree < 0 || s.down.tree >= n) return false;
  if (s.up.tree == s.down.tree) return false;
  if (!s.up.letter.is_generator() || s.down.letter.is_generator()) return false;
  return tree(s.up.tree).valid_letter(s.up.letter) && tree(s.down.tree).valid_letter(s.down.letter);
}

std::optional<Point> BlockedProduct::apply(const Point& p, const EdgeStep& s) const {
  if (!valid_step(s)) return std::nullopt;
  return apply(apply(p, s.up), s.down);
}

std::optional<EdgeStep> BlockedProduct::edge_between(const Point& u, const Point& v) const {
  int found = 0;
  TreeMove moves[2];
  for (std::size_t t = 0; t < tree_count(); ++t) {
    if (u[t] == v[t]) continue;
    if (found == 2) return std::nullopt;
    Letter l;
    if (!tree(static_cast<int>(t)).adjacent(u[t], v[t], &l)) return std::nullopt;
    moves[found++] = TreeMove{static_cast<int>(t), l};
  }
  if (found != 2) return std::nullopt;
  if (moves[0].letter.is_generator() == moves[1].letter.is_generator()) return std::nullopt;
  if (moves[0].letter.is_generator()) return EdgeStep{moves[0], moves[1]};
  return EdgeStep{moves[1], moves[0]};
}

std::vector<LevelEdge> BlockedProduct::neighbors(const Point& p) const {
  std::vector<LevelEdge> out;
  const int n = static_cast<int>(tree_count());
  for (int up = 0; up < n; ++up) {
    for (int down = 0; down < n; ++down) {
      if (up == down) continue;
      for (int a = 1; a <= tree(up).rank(); ++a) {
        for (int b = 1; b <= tree(down).rank(); ++b) {
          out.push_back(LevelEdge{p, EdgeStep{TreeMove{up, Letter(a)}, TreeMove{down, Letter(-b)}}});
        }
      }
    }
  }
  return out;
}

std::size_t BlockedProduct::block_distance(const Point& u, const Point& v, int b) const {
  std::size_t d = 0;
  const int first = first_tree(b);
  for (int t = first; t < first + static_cast<int>(block_size(b)); ++t) {
    d += tree(t).distance(u[static_cast<std::size_t>(t)], v[static_cast<std::size_t>(t)]);
  }
  return d;
}

std::size_t BlockedProduct::product_distance(const Point& u, const Point& v) const {
  std::size_t d = 0;
  for (int b = 0; b < static_cast<int>(block_count()); ++b) d += block_distance(u, v, b);
  return d;
}

MonotoneLine BlockedProduct::canonical_line(const Point& p, int b) const {
  return canonical_monotone_line(block(b), b, block_coords(p, b));
}

bool BlockedProduct::on_line(const Point& p, const MonotoneLine& line) const {
  return line.contains(block_coords(p, line.block_index()));
}

void BlockedProduct::place_on_line(Point& p, const MonotoneLine& line, int level) const {
  const int b = line.block_index();
  const auto first = static_cast<std::size_t>(first_tree(b));
  for (std::size_t i = 1; i < block_size(b); ++i) p[first + i] = line.base()[i];
  p[first] = line.first_at(level);
}

std::string BlockedProduct::format(const Point& p) const {
  std::ostringstream out;
  out << '(';
  for (std::size_t b = 0; b < block_count(); ++b) {
    if (b) out << " | ";
    const int first = first_tree(static_cast<int>(b));
    for (std::size_t i = 0; i < block_size(static_cast<int>(b)); ++i) {
      if (i) out << ',';
      const int t = first + static_cast<int>(i);
      out << tree(t).word(p[static_cast<std::size_t>(t)]);
    }
  }
  out << ')';
  return out.str();
}

Point BlockedProduct::parse_point(std::span<const std::string> words) const {
  if (words.size() != tree_count()) {
    throw Error("expected " + std::to_string(tree_count()) + " words for a vertex, got " +
                std::to_string(words.size()));
  }
  Point p;
  for (std::size_t t = 0; t < words.size(); ++t) p[t] = tree(static_cast<int>(t)).intern(words[t]);
  return p;
}

std::array<Point, 3> TriangleCell::vertices(const BlockedProduct& X) const {
  std::array<Point, 3> out;
  std::array<WordId, 3> tops;
  for (int j = 0; j < 3; ++j) tops[j] = X.tree(trees[j]).mul(bottom(j), letters[j]);
  for (int i = 0; i < 3; ++i) {
    out[i] = anchor;
    for (int j = 0; j < 3; ++j) {
      const bool at_top = slice == 1 ? (j == i) : (j != i);
      out[i][static_cast<std::size_t>(trees[j])] = at_top ? tops[j] : bottom(j);
    }
  }
  return out;
}

std::optional<TriangleCell> make_triangle(const BlockedProduct& X, std::array<int, 3> trees,
                                          std::array<WordId, 3> bottoms, std::array<Letter, 3> letters,
                                          int slice, Point anchor) {
  if (slice != 1 && slice != 2) return std::nullopt;
  const int n = static_cast<int>(X.tree_count());
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return trees[a] < trees[b]; });
  TriangleCell cell;
  cell.slice = slice;
  for (int i = 0; i < 3; ++i) {
    const int src = order[i];
    const int t = trees[src];
    if (t < 0 || t >= n) return std::nullopt;
    if (i > 0 && t == cell.trees[i - 1]) return std::nullopt;
    if (!letters[src].is_generator() || !X.tree(t).valid_letter(letters[src])) return std::nullopt;
    cell.trees[i] = t;
    cell.letters[i] = letters[src];
    anchor[static_cast<std::size_t>(t)] = bottoms[src];
  }
  cell.anchor = anchor;
  if (X.height(cell.anchor) != -slice) return std::nullopt;
  return cell;
}

bool valid_triangle(const BlockedProduct& X, const TriangleCell& cell) {
  auto rebuilt = make_triangle(X, cell.trees, {cell.bottom(0), cell.bottom(1), cell.bottom(2)},
                               cell.letters, cell.slice, cell.anchor);
  return rebuilt && *rebuilt == cell;
}

std::optional<TriangleCell> triangle_from_vertices(const BlockedProduct& X, const Point& u,
                                                   const Point& v, const Point& w) {
  if (u == v || v == w || u == w) return std::nullopt;
  std::array<int, 3> trees{};
  std::array<WordId, 3> bottoms{};
  std::array<Letter, 3> letters{};
  int found = 0;
  std::array<int, 3> tops_per_vertex{0, 0, 0};
  const Point* pts[3] = {&u, &v, &w};
  for (std::size_t t = 0; t < X.tree_count(); ++t) {
    if (u[t] == v[t] && v[t] == w[t]) continue;
    if (found == 3) return std::nullopt;
    WordId lo = u[t], hi = u[t];
    for (const Point* p : pts) {
      if ((*p)[t] != lo) hi = (*p)[t];
    }
    for (const Point* p : pts) {
      if ((*p)[t] != lo && (*p)[t] != hi) return std::nullopt;
    }
    const HeightedTree& tree = X.tree(static_cast<int>(t));
    if (tree.height(lo) > tree.height(hi)) std::swap(lo, hi);
    Letter l;
    if (!tree.adjacent(lo, hi, &l) || !l.is_generator()) return std::nullopt;
    for (int i = 0; i < 3; ++i) {
      if ((*pts[i])[t] == hi) ++tops_per_vertex[i];
    }
    trees[found] = static_cast<int>(t);
    bottoms[found] = lo;
    letters[found] = l;
    ++found;
  }
  if (found != 3) return std::nullopt;
  const int slice = tops_per_vertex[0];
  if (slice != tops_per_vertex[1] || slice != tops_per_vertex[2]) return std::nullopt;
  auto cell = make_triangle(X, trees, bottoms, letters, slice, u);
  if (!cell) return std::nullopt;
  const auto verts = cell->vertices(X);
  for (const Point* p : pts) {
    if (std::find(verts.begin(), verts.end(), *p) == verts.end()) return std::nullopt;
  }
  return cell;
}

std::vector<TriangleCell> triangles_on_edge(const BlockedProduct& X, const Point& u, const Point& v) {
  std::vector<TriangleCell> out;
  for (const LevelEdge& e : X.neighbors(u)) {
    const Point w = *X.apply(u, e.step);
    if (w == v) continue;
    if (auto cell = triangle_from_vertices(X, u, v, w)) out.push_back(*cell);
  }
  return out;
}

LineEmbedding::LineEmbedding(const BlockedProduct& X, MonotoneLine line) : X_(&X), line_(std::move(line)) {}

int LineEmbedding::active_height(const Point& x) const {
  int h = 0;
  for (int b = 0; b < static_cast<int>(X_->block_count()); ++b) {
    if (b != line_.block_index()) h += X_->block_height(x, b);
  }
  return h;
}

Point LineEmbedding::lift(const Point& x) const {
  Point p = x;
  X_->place_on_line(p, line_, -active_height(x));
  return p;
}

Point LineEmbedding::project(const Point& p) const {
  Point x = p;
  X_->set_block_coords(x, line_.block_index(), line_.base());
  return x;
}

bool LineEmbedding::in_image(const Point& p) const {
  return X_->height(p) == 0 && X_->on_line(p, line_);
}

namespace {

struct ActiveDiff {
  int count = 0;
  std::array<int, 3> trees{};
};

ActiveDiff active_diff(const BlockedProduct& X, const LineEmbedding& f, std::span<const Point* const> pts) {
  ActiveDiff d;
  for (int t = 0; t < static_cast<int>(X.tree_count()); ++t) {
    if (!f.active_tree(t)) continue;
    const auto i = static_cast<std::size_t>(t);
    bool differs = false;
    for (const Point* p : pts) differs = differs || (*p)[i] != (*pts[0])[i];
    if (!differs) continue;
    if (d.count == 3) return ActiveDiff{4, {}};
    d.trees[static_cast<std::size_t>(d.count++)] = t;
  }
  return d;
}

}  // namespace

bool LineEmbedding::sliced_edge(const Point& x, const Point& y) const {
  const Point* pts[2] = {&x, &y};
  const ActiveDiff d = active_diff(*X_, *this, pts);
  if (d.count == 1) {
    const auto t = static_cast<std::size_t>(d.trees[0]);
    return X_->tree(d.trees[0]).adjacent(x[t], y[t]);
  }
  if (d.count == 2) {
    Letter l0, l1;
    const auto t0 = static_cast<std::size_t>(d.trees[0]);
    const auto t1 = static_cast<std::size_t>(d.trees[1]);
    if (!X_->tree(d.trees[0]).adjacent(x[t0], y[t0], &l0)) return false;
    if (!X_->tree(d.trees[1]).adjacent(x[t1], y[t1], &l1)) return false;
    return l0.is_generator() != l1.is_generator();
  }
  return false;
}

bool LineEmbedding::sliced_triangle(const Point& x, const Point& y, const Point& z) const {
  const Point* pts[3] = {&x, &y, &z};
  const ActiveDiff d = active_diff(*X_, *this, pts);
  if (d.count != 2 && d.count != 3) return false;
  // Each differing tree contributes one edge; record which vertices sit at its top.
  std::array<std::array<bool, 3>, 3> is_top{};
  for (int k = 0; k < d.count; ++k) {
    const int t = d.trees[static_cast<std::size_t>(k)];
    const auto i = static_cast<std::size_t>(t);
    WordId lo = x[i], hi = x[i];
    for (const Point* p : pts) {
      if ((*p)[i] != lo) hi = (*p)[i];
    }
    for (const Point* p : pts) {
      if ((*p)[i] != lo && (*p)[i] != hi) return false;
    }
    if (X_->tree(t).height(lo) > X_->tree(t).height(hi)) std::swap(lo, hi);
    if (!X_->tree(t).adjacent(lo, hi)) return false;
    for (int j = 0; j < 3; ++j) is_top[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = (*pts[j])[i] == hi;
  }
  std::array<int, 3> tops{};
  for (int j = 0; j < 3; ++j) {
    const auto& row = is_top[static_cast<std::size_t>(j)];
    for (int o = 0; o < j; ++o) {
      if (row == is_top[static_cast<std::size_t>(o)]) return false;
    }
    for (int k = 0; k < d.count; ++k) tops[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(k)];
  }
  if (d.count == 2) {
    // Half-square of a tree square: the two corners of the slicing diagonal
    // plus one of the other two.
    return std::count(tops.begin(), tops.end(), 1) == 2;
  }
  // Horizontal slice of a cube: all vertices one level up, or all two.
  return tops[0] == tops[1] && tops[1] == tops[2];
}

std::optional<EdgeStep> LineEmbedding::embed_edge(const Point& x, const Point& y) const {
  if (!sliced_edge(x, y)) return std::nullopt;
  return X_->edge_between(lift(x), lift(y));
}

std::optional<TriangleCell> LineEmbedding::embed_triangle(const Point& x, const Point& y, const Point& z) const {
  if (!sliced_triangle(x, y, z)) return std::nullopt;
  return triangle_from_vertices(*X_, lift(x), lift(y), lift(z));
}

EdgeStep LineEmbedding::transverse_step(const Point&, TreeMove m) const {
  const TreeMove compensation{X_->first_tree(line_.block_index()),
                              m.letter.is_generator() ? Letter(-1) : Letter(1)};
  return m.letter.is_generator() ? EdgeStep{m, compensation} : EdgeStep{compensation, m};
}

}  // namespace bbfill
