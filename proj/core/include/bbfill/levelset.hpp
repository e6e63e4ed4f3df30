#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bbfill/factors.hpp"

namespace bbfill {

inline constexpr std::size_t kMaxTrees = 8;

/// A vertex of the product of all trees: one interned word per tree.
class Point {
 public:
  Point() = default;

  WordId& operator[](std::size_t t) { return coords_[t]; }
  WordId operator[](std::size_t t) const { return coords_[t]; }

  friend bool operator==(const Point&, const Point&) = default;

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (WordId w : coords_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

 private:
  std::array<WordId, kMaxTrees> coords_{};
};

struct PointHash {
  std::size_t operator()(const Point& p) const { return p.hash(); }
};

/// A letter applied at a global tree index.
struct TreeMove {
  int tree = -1;
  Letter letter;
  friend bool operator==(const TreeMove&, const TreeMove&) = default;
};

/// A level-set edge relative to its source: one tree goes up, another goes down.
struct EdgeStep {
  TreeMove up;
  TreeMove down;

  EdgeStep reversed() const {
    return EdgeStep{TreeMove{down.tree, down.letter.inverse()}, TreeMove{up.tree, up.letter.inverse()}};
  }
  friend bool operator==(const EdgeStep&, const EdgeStep&) = default;
};

/// An oriented edge of the zero-level set.
struct LevelEdge {
  Point source;
  EdgeStep step;
};

class BlockedProduct;

/// A horizontal 2-cell: the zero slice of a 3-cube spanned by three tree edges.
///
/// `anchor` carries the coordinates of every tree outside the cell; its entries
/// at the three cell trees are the bottoms. With slice 1 each vertex has exactly
/// one coordinate at the top of its edge, with slice 2 exactly two.
struct TriangleCell {
  std::array<int, 3> trees{};
  std::array<Letter, 3> letters{};
  int slice = 0;
  Point anchor;

  WordId bottom(int i) const { return anchor[static_cast<std::size_t>(trees[i])]; }

  /// Boundary cycle v0 -> v1 -> v2 -> v0; vertex i singles out tree i
  /// (at the top for slice 1, at the bottom for slice 2).
  std::array<Point, 3> vertices(const BlockedProduct& X) const;

  friend bool operator==(const TriangleCell&, const TriangleCell&) = default;
};

/// Product of three blocks of heighted trees with the sum height function.
///
/// Owns the tree interning tables; not copyable, since lines and cells refer
/// back into it.
class BlockedProduct {
 public:
  explicit BlockedProduct(const BlockSpec& spec);
  explicit BlockedProduct(std::string_view spec) : BlockedProduct(BlockSpec::parse(spec)) {}

  BlockedProduct(const BlockedProduct&) = delete;
  BlockedProduct& operator=(const BlockedProduct&) = delete;

  const BlockSpec& spec() const { return spec_; }
  std::size_t tree_count() const { return tree_block_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const Block& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
  const HeightedTree& tree(int t) const;
  int block_of(int t) const { return tree_block_[static_cast<std::size_t>(t)]; }
  int first_tree(int b) const { return block_first_[static_cast<std::size_t>(b)]; }
  std::size_t block_size(int b) const { return block(b).size(); }

  Point identity() const { return Point{}; }

  int height(const Point& p) const;
  int block_height(const Point& p, int b) const;
  std::vector<WordId> block_coords(const Point& p, int b) const;
  void set_block_coords(Point& p, int b, std::span<const WordId> coords) const;
  bool same_block_coords(const Point& u, const Point& v, int b) const;

  Point apply(const Point& p, TreeMove m) const;
  /// Target of the step, or nullopt if the step is not a level-set edge shape.
  std::optional<Point> apply(const Point& p, const EdgeStep& s) const;
  bool valid_step(const EdgeStep& s) const;
  /// The edge from u to v, if the two vertices are adjacent in the level set.
  std::optional<EdgeStep> edge_between(const Point& u, const Point& v) const;

  /// All edges leaving p, ordered by (up tree, down tree, up letter, down letter).
  std::vector<LevelEdge> neighbors(const Point& p) const;

  std::size_t block_distance(const Point& u, const Point& v, int b) const;
  /// d_X1 + d_X2 + d_X3 in the unsliced product.
  std::size_t product_distance(const Point& u, const Point& v) const;

  MonotoneLine canonical_line(const Point& p, int b) const;
  bool on_line(const Point& p, const MonotoneLine& line) const;
  /// Replaces the block coordinates of p by the point of `line` at `level`.
  void place_on_line(Point& p, const MonotoneLine& line, int level) const;

  std::string format(const Point& p) const;
  Point parse_point(std::span<const std::string> words) const;

 private:
  BlockSpec spec_;
  std::vector<Block> blocks_;
  std::vector<int> tree_block_;
  std::vector<int> tree_local_;
  std::vector<int> block_first_;
};

/// Validates and builds a horizontal triangle; nullopt if the bottoms do not
/// put the slice at height zero or the data is malformed.
std::optional<TriangleCell> make_triangle(const BlockedProduct& X, std::array<int, 3> trees,
                                          std::array<WordId, 3> bottoms, std::array<Letter, 3> letters,
                                          int slice, Point anchor);

/// The triangle with exactly these three vertices, if one exists.
std::optional<TriangleCell> triangle_from_vertices(const BlockedProduct& X, const Point& u,
                                                   const Point& v, const Point& w);

bool valid_triangle(const BlockedProduct& X, const TriangleCell& cell);

/// Triangles of the level set having the edge u -> v on their boundary.
std::vector<TriangleCell> triangles_on_edge(const BlockedProduct& X, const Point& u, const Point& v);

/// Embeds the sliced product of the two blocks other than `line.block_index()`
/// into the level set by x -> (x, L(-h(x))).
///
/// Points of the two-block product are stored as full Points whose line-block
/// coordinates are ignored.
class LineEmbedding {
 public:
  LineEmbedding(const BlockedProduct& X, MonotoneLine line);

  const MonotoneLine& line() const { return line_; }
  int line_block() const { return line_.block_index(); }
  bool active_tree(int t) const { return X_->block_of(t) != line_.block_index(); }

  /// Height of x in the two-block product.
  int active_height(const Point& x) const;
  Point lift(const Point& x) const;
  /// Inverse of lift on its image: resets the line block to the line's base point.
  Point project(const Point& p) const;
  bool in_image(const Point& p) const;

  /// Cells of the sliced two-block product, given by their vertices.
  /// An edge is transverse (one tree move) or horizontal (up one tree, down
  /// another); a 2-cell is a half-square in the slicing of a tree square, or,
  /// when three trees are active, a horizontal slice of a tree cube.
  bool sliced_edge(const Point& x, const Point& y) const;
  bool sliced_triangle(const Point& x, const Point& y, const Point& z) const;

  std::optional<EdgeStep> embed_edge(const Point& x, const Point& y) const;
  std::optional<TriangleCell> embed_triangle(const Point& x, const Point& y, const Point& z) const;

  /// Image of a transverse tree move at x: the tree move paired with the
  /// compensating step of the line.
  EdgeStep transverse_step(const Point& x, TreeMove m) const;

 private:
  const BlockedProduct* X_;
  MonotoneLine line_;
};

}  // namespace bbfill
