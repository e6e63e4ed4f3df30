#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bbfill {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WordId = std::uint32_t;
inline constexpr WordId kIdentityWord = 0;

/// A signed free generator: +g is the g-th generator (1-based), -g its inverse.
/// Written as 'a'+g-1 for generators and the upper-case letter for inverses.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr explicit Letter(int value) : value_(static_cast<std::int8_t>(value)) {}

  static Letter generator(int index) { return Letter(index); }
  static Letter from_char(char ch);

  constexpr int value() const { return value_; }
  constexpr int index() const { return value_ < 0 ? -value_ : value_; }
  constexpr bool is_generator() const { return value_ > 0; }
  constexpr int height_delta() const { return value_ > 0 ? 1 : -1; }
  constexpr Letter inverse() const { return Letter(-value_); }
  char to_char() const;

  friend constexpr bool operator==(Letter, Letter) = default;

 private:
  std::int8_t value_ = 0;
};

/// Cayley tree of a free group of finite rank with the exponent-sum height.
///
/// Vertices are reduced words, interned on first use. The tree is infinite, so
/// only visited words are materialized; interning mutates internal tables and
/// is therefore not safe to share between threads.
class HeightedTree {
 public:
  explicit HeightedTree(int rank);

  int rank() const { return rank_; }
  WordId identity() const { return kIdentityWord; }

  bool valid_letter(Letter l) const { return l.value() != 0 && l.index() <= rank_; }

  /// Reduced word for v·l together with the height change (+1 or -1).
  std::pair<WordId, int> step(WordId v, Letter l) const;
  WordId mul(WordId v, Letter l) const { return step(v, l).first; }
  WordId mul(WordId v, std::span<const Letter> word) const;

  int height(WordId v) const { return nodes_[v].height; }
  std::size_t length(WordId v) const { return nodes_[v].length; }
  WordId parent(WordId v) const { return nodes_[v].parent; }
  /// Last letter of a non-identity word.
  Letter last_letter(WordId v) const { return nodes_[v].last; }

  /// Letter l with v·l == w, if v and w are adjacent.
  bool adjacent(WordId v, WordId w, Letter* letter = nullptr) const;

  std::size_t distance(WordId u, WordId v) const;
  /// The unique geodesic: strip the common prefix, descend to it, ascend to v.
  std::vector<Letter> geodesic(WordId u, WordId v) const;

  std::string word(WordId v) const;
  /// Parses and freely reduces a word; "1" and "" denote the identity.
  WordId intern(std::string_view text) const;

  std::size_t materialized() const { return nodes_.size(); }

 private:
  struct Node {
    WordId parent;
    Letter last;
    std::uint32_t length;
    std::int32_t height;
  };

  std::size_t slot(Letter l) const {
    return static_cast<std::size_t>(l.value() > 0 ? l.value() - 1 : rank_ - l.value() - 1);
  }
  WordId ancestor(WordId v, std::size_t depth) const;

  int rank_;
  mutable std::vector<Node> nodes_;
  mutable std::vector<WordId> children_;  // nodes_.size() * 2 * rank_, 0 = not yet interned
};

/// One move in a block: a letter applied to the tree at `tree` (block-local index).
struct BlockMove {
  int tree;
  Letter letter;
  friend bool operator==(const BlockMove&, const BlockMove&) = default;
};

/// A product of heighted trees (one factor X_i). Points are tuples of words.
class Block {
 public:
  explicit Block(std::vector<HeightedTree> trees);

  std::size_t size() const { return trees_.size(); }
  const HeightedTree& tree(std::size_t i) const { return trees_[i]; }

  int height(std::span<const WordId> point) const;
  /// 1-skeleton metric of the unsliced cube complex: sum of tree distances.
  std::size_t distance(std::span<const WordId> u, std::span<const WordId> v) const;
  /// Per-tree geodesics concatenated in increasing tree index.
  std::vector<BlockMove> geodesic(std::span<const WordId> u, std::span<const WordId> v) const;

 private:
  std::vector<HeightedTree> trees_;
};

/// The canonical monotone line of a block through a base point: only the first
/// tree coordinate moves, by the first generator upward and its inverse downward.
class MonotoneLine {
 public:
  MonotoneLine() = default;
  MonotoneLine(const Block& block, int block_index, std::vector<WordId> base);

  int block_index() const { return block_index_; }
  const std::vector<WordId>& base() const { return base_; }
  int base_level() const { return base_level_; }

  /// First-tree coordinate of the point at `level`.
  WordId first_at(int level) const;
  std::vector<WordId> at(int level) const;
  bool contains(std::span<const WordId> point) const;

  friend bool operator==(const MonotoneLine& a, const MonotoneLine& b) {
    return a.block_index_ == b.block_index_ && a.base_ == b.base_;
  }

 private:
  const Block* block_ = nullptr;
  int block_index_ = -1;
  std::vector<WordId> base_;
  int base_level_ = 0;
  // Materialized first-tree words for levels [lowest_, lowest_ + cache_.size()).
  mutable std::deque<WordId> cache_;
  mutable int lowest_ = 0;
};

MonotoneLine canonical_monotone_line(const Block& block, int block_index,
                                     std::vector<WordId> point);

/// Parsed `[F2,F2],[F2],[F2]`: tree ranks per block.
struct BlockSpec {
  std::vector<std::vector<int>> ranks;

  static BlockSpec parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

}  // namespace bbfill
