#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbfill/levelset.hpp"

namespace bbfill {

class MoveError : public Error {
 public:
  MoveError(std::size_t pos, const std::string& what)
      : Error("move at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// A based closed edge path in the 1-skeleton of the level set, stored as its
/// vertex sequence v_0 .. v_n with v_0 = v_n = base. Equal consecutive
/// vertices are stays. The buffer keeps a gap at the last edit so that runs of
/// nearby rewrites cost O(1) each.
class Loop {
 public:
  Loop(const BlockedProduct& X, const Point& base);
  /// Validates that consecutive vertices are equal or adjacent and the path closes.
  static Loop from_vertices(const BlockedProduct& X, std::span<const Point> vertices);
  /// Steps given relative to their sources; nullopt is a stay.
  static Loop from_steps(const BlockedProduct& X, const Point& base,
                         std::span<const std::optional<EdgeStep>> steps);

  const BlockedProduct& product() const { return *X_; }
  std::size_t length() const { return size() - 1; }
  const Point& base() const { return vertex(0); }
  const Point& vertex(std::size_t i) const {
    return i < gap_begin_ ? buf_[i] : buf_[i + (gap_end_ - gap_begin_)];
  }
  bool is_stay(std::size_t i) const { return vertex(i) == vertex(i + 1); }
  /// The step from vertex i to i+1; nullopt for a stay.
  std::optional<EdgeStep> step(std::size_t i) const;

  std::vector<Point> vertices() const;
  std::vector<std::optional<EdgeStep>> steps() const;
  Loop reversed() const;

  /// Replaces `remove` vertices starting at logical index `first` by `insert`.
  void splice(std::size_t first, std::size_t remove, std::span<const Point> insert);

  friend bool operator==(const Loop& a, const Loop& b) { return a.vertices() == b.vertices(); }

 private:
  std::size_t size() const { return buf_.size() - (gap_end_ - gap_begin_); }
  void move_gap(std::size_t to);

  const BlockedProduct* X_;
  std::vector<Point> buf_;
  std::size_t gap_begin_ = 0;
  std::size_t gap_end_ = 0;
};

enum class MoveKind : std::uint8_t { Cell, Reduce, Insert };

/// One elementary move of a null-homotopy trace, addressed by an absolute
/// index into the current loop.
///
/// Cell: the arc of `arc` steps starting at vertex `pos` runs along the boundary
/// of the named triangle and is replaced by the complementary arc (cost 1). The
/// triangle's coordinates outside its three trees are read from vertex `pos`.
/// Reduce: deletes the stay at `pos`, or the backtrack formed by steps pos, pos+1.
/// Insert: inserts a stay, or an edge and its inverse, at vertex `pos`.
struct Move {
  MoveKind kind = MoveKind::Reduce;
  std::uint8_t arc = 0;
  std::uint8_t slice = 0;
  bool stay = false;
  std::uint32_t pos = 0;
  std::array<std::int8_t, 3> trees{};
  std::array<Letter, 3> letters{};
  std::array<WordId, 3> bottoms{};

  static Move cell(std::size_t pos, const TriangleCell& cell, int arc);
  static Move reduce(std::size_t pos);
  static Move insert(std::size_t pos, const EdgeStep& step);
  static Move insert_stay(std::size_t pos);

  /// Inserted edge (Insert moves that are not stays).
  EdgeStep edge() const;
  Move shifted(std::size_t offset) const;

  friend bool operator==(const Move&, const Move&) = default;
};

/// Resolves a Cell move against the vertex at its position.
std::optional<TriangleCell> move_cell(const BlockedProduct& X, const Move& move, const Point& at);

struct Trace {
  std::vector<Move> moves;

  std::size_t area() const;
  std::size_t size() const { return moves.size(); }
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Applies one move; throws MoveError naming the position and the mismatch.
void apply_move(Loop& loop, const Move& move);

struct FillReport {
  bool verified = false;
  std::size_t area = 0;
  std::size_t final_length = 0;
  std::optional<std::size_t> failed_move;
  std::string message;
};

/// Replays the trace from `loop`; verified iff every move applies and the
/// loop ends with no steps at all.
FillReport verify(const Loop& loop, const Trace& trace);

/// Trace filling the reversed loop with the same area.
Trace reverse(const Loop& loop, const Trace& trace);
/// Trace filling prefix·loop·prefix⁻¹, where `prefix` is the vertex path ending at the loop base.
Trace conjugate(const Trace& trace, std::span<const Point> prefix);
/// Trace filling l_1·l_2·…, given traces filling each l_i.
Trace concat(std::span<const Trace> traces);
Trace shifted(const Trace& trace, std::size_t offset);

/// A rewriting of the arc `from` into `to` (both with the same endpoints). Its
/// moves act on a loop in which `from` starts at vertex 0; shift to reuse.
struct Rewrite {
  std::vector<Point> from;
  std::vector<Point> to;
  Trace moves;
};

/// Given a fill of s1·s2·s3 (vertex list `loop_vertices`, arc s1·s2 of
/// `arc_length` steps), the rewriting of s1·s2 into s3⁻¹ with the same area.
Rewrite homotopy_from_fill(const BlockedProduct& X, std::span<const Point> loop_vertices,
                           std::size_t arc_length, const Trace& fill);

/// Emits moves while applying them to a live loop, so producers can address
/// absolute positions and read the current vertices.
class TraceBuilder {
 public:
  TraceBuilder(Loop& loop, Trace& out) : loop_(&loop), out_(&out) {}

  const BlockedProduct& product() const { return loop_->product(); }
  const Loop& loop() const { return *loop_; }
  const Point& vertex(std::size_t i) const { return loop_->vertex(i); }
  std::size_t area() const { return area_; }

  void emit(const Move& move);
  /// Cell move whose triangle is spanned by the arc's vertices and `third`
  /// (arc 1) or by the arc's three vertices (arc 2, 3).
  void cell(std::size_t pos, int arc, const Point& third);
  void reduce(std::size_t pos) { emit(Move::reduce(pos)); }
  void insert(std::size_t pos, const EdgeStep& step) { emit(Move::insert(pos, step)); }
  void insert_stay(std::size_t pos) { emit(Move::insert_stay(pos)); }

  /// Inserts path·path⁻¹ at `pos`; path[0] must equal the vertex at pos.
  void insert_detour(std::size_t pos, std::span<const Point> path);
  /// Removes stays and backtracks in the window of `length` steps starting at
  /// `pos`; returns the reduced window length.
  std::size_t reduce_window(std::size_t pos, std::size_t length);

 private:
  Loop* loop_;
  Trace* out_;
  std::size_t area_ = 0;
};

}  // namespace bbfill
