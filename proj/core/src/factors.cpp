#include "bbfill/factors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bbfill {

Letter Letter::from_char(char ch) {
  if (ch >= 'a' && ch <= 'z') return Letter(ch - 'a' + 1);
  if (ch >= 'A' && ch <= 'Z') return Letter(-(ch - 'A' + 1));
  throw Error(std::string("invalid letter '") + ch + "'");
}

char Letter::to_char() const {
  return value_ > 0 ? static_cast<char>('a' + value_ - 1) : static_cast<char>('A' - value_ - 1);
}

HeightedTree::HeightedTree(int rank) : rank_(rank) {
  if (rank < 1 || rank > 26) throw Error("tree rank must lie in [1, 26]");
  nodes_.push_back(Node{kIdentityWord, Letter(), 0, 0});
  children_.assign(static_cast<std::size_t>(2 * rank_), kIdentityWord);
}

std::pair<WordId, int> HeightedTree::step(WordId v, Letter l) const {
  const int delta = l.height_delta();
  const Node node = nodes_[v];
  if (node.length > 0 && node.last == l.inverse()) return {node.parent, delta};

  const std::size_t idx = static_cast<std::size_t>(v) * 2 * rank_ + slot(l);
  if (WordId child = children_[idx]; child != kIdentityWord) return {child, delta};

  const auto id = static_cast<WordId>(nodes_.size());
  nodes_.push_back(Node{v, l, node.length + 1, node.height + delta});
  children_.resize(children_.size() + 2 * rank_, kIdentityWord);
  children_[idx] = id;
  return {id, delta};
}

WordId HeightedTree::mul(WordId v, std::span<const Letter> word) const {
  for (Letter l : word) v = mul(v, l);
  return v;
}

bool HeightedTree::adjacent(WordId v, WordId w, Letter* letter) const {
  if (nodes_[w].length > 0 && nodes_[w].parent == v) {
    if (letter) *letter = nodes_[w].last;
    return true;
  }
  if (nodes_[v].length > 0 && nodes_[v].parent == w) {
    if (letter) *letter = nodes_[v].last.inverse();
    return true;
  }
  return false;
}

WordId HeightedTree::ancestor(WordId v, std::size_t depth) const {
  while (nodes_[v].length > depth) v = nodes_[v].parent;
  return v;
}

std::size_t HeightedTree::distance(WordId u, WordId v) const {
  std::size_t lu = nodes_[u].length, lv = nodes_[v].length;
  std::size_t d = 0;
  while (lu > lv) { u = nodes_[u].parent; --lu; ++d; }
  while (lv > lu) { v = nodes_[v].parent; --lv; ++d; }
  while (u != v) {
    u = nodes_[u].parent;
    v = nodes_[v].parent;
    d += 2;
  }
  return d;
}

std::vector<Letter> HeightedTree::geodesic(WordId u, WordId v) const {
  std::size_t lu = nodes_[u].length, lv = nodes_[v].length;
  std::vector<Letter> down, up;
  while (lu > lv) { down.push_back(nodes_[u].last.inverse()); u = nodes_[u].parent; --lu; }
  while (lv > lu) { up.push_back(nodes_[v].last); v = nodes_[v].parent; --lv; }
  while (u != v) {
    down.push_back(nodes_[u].last.inverse());
    up.push_back(nodes_[v].last);
    u = nodes_[u].parent;
    v = nodes_[v].parent;
  }
  down.insert(down.end(), up.rbegin(), up.rend());
  return down;
}

std::string HeightedTree::word(WordId v) const {
  if (v == kIdentityWord) return "1";
  std::string out(nodes_[v].length, '?');
  for (auto i = out.size(); i-- > 0;) {
    out[i] = nodes_[v].last.to_char();
    v = nodes_[v].parent;
  }
  return out;
}

WordId HeightedTree::intern(std::string_view text) const {
  if (text == "1") return kIdentityWord;
  WordId v = kIdentityWord;
  for (char ch : text) {
    const Letter l = Letter::from_char(ch);
    if (!valid_letter(l)) {
      throw Error(std::string("letter '") + ch + "' exceeds tree rank " + std::to_string(rank_));
    }
    v = mul(v, l);
  }
  return v;
}

Block::Block(std::vector<HeightedTree> trees) : trees_(std::move(trees)) {
  if (trees_.empty()) throw Error("a block needs at least one tree");
}

int Block::height(std::span<const WordId> point) const {
  int h = 0;
  for (std::size_t i = 0; i < trees_.size(); ++i) h += trees_[i].height(point[i]);
  return h;
}

std::size_t Block::distance(std::span<const WordId> u, std::span<const WordId> v) const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < trees_.size(); ++i) d += trees_[i].distance(u[i], v[i]);
  return d;
}

std::vector<BlockMove> Block::geodesic(std::span<const WordId> u, std::span<const WordId> v) const {
  std::vector<BlockMove> out;
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    for (Letter l : trees_[i].geodesic(u[i], v[i])) out.push_back({static_cast<int>(i), l});
  }
  return out;
}

MonotoneLine::MonotoneLine(const Block& block, int block_index, std::vector<WordId> base)
    : block_(&block), block_index_(block_index), base_(std::move(base)) {
  if (base_.size() != block.size()) throw Error("line base point has wrong arity");
  base_level_ = block.height(base_);
  cache_.push_back(base_[0]);
  lowest_ = base_level_;
}

WordId MonotoneLine::first_at(int level) const {
  const HeightedTree& tree = block_->tree(0);
  const Letter up = Letter::generator(1);
  while (level < lowest_) {
    cache_.push_front(tree.mul(cache_.front(), up.inverse()));
    --lowest_;
  }
  while (level >= lowest_ + static_cast<int>(cache_.size())) {
    cache_.push_back(tree.mul(cache_.back(), up));
  }
  return cache_[static_cast<std::size_t>(level - lowest_)];
}

std::vector<WordId> MonotoneLine::at(int level) const {
  std::vector<WordId> p = base_;
  p[0] = first_at(level);
  return p;
}

bool MonotoneLine::contains(std::span<const WordId> point) const {
  if (point.size() != base_.size()) return false;
  for (std::size_t i = 1; i < base_.size(); ++i) {
    if (point[i] != base_[i]) return false;
  }
  const int level = block_->height(point);
  return first_at(level) == point[0];
}

MonotoneLine canonical_monotone_line(const Block& block, int block_index, std::vector<WordId> point) {
  return MonotoneLine(block, block_index, std::move(point));
}

BlockSpec BlockSpec::parse(std::string_view text) {
  BlockSpec spec;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error("block spec '" + std::string(text) + "' at column " + std::to_string(i + 1) + ": " + why);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '[') fail("expected '['");
    ++i;
    std::vector<int> block;
    for (;;) {
      skip_ws();
      if (i >= text.size() || text[i] != 'F') fail("expected 'F<rank>'");
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) fail("missing rank");
      const int rank = std::stoi(std::string(text.substr(start, i - start)));
      if (rank < 1 || rank > 26) fail("rank out of range");
      block.push_back(rank);
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; continue; }
      if (i < text.size() && text[i] == ']') { ++i; break; }
      fail("expected ',' or ']'");
    }
    spec.ranks.push_back(std::move(block));
    skip_ws();
    if (i < text.size()) {
      if (text[i] != ',') fail("expected ',' between blocks");
      ++i;
      skip_ws();
    }
  }
  if (spec.ranks.size() != 3) {
    throw Error("block spec '" + std::string(text) + "' must have exactly three blocks");
  }
  return spec;
}

std::string BlockSpec::to_string() const {
  std::ostringstream out;
  for (std::size_t b = 0; b < ranks.size(); ++b) {
    if (b) out << ',';
    out << '[';
    for (std::size_t t = 0; t < ranks[b].size(); ++t) {
      if (t) out << ',';
      out << 'F' << ranks[b][t];
    }
    out << ']';
  }
  return out.str();
}

}  // namespace bbfill
