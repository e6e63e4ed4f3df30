#include "bbfill/homotopy.hpp"

#include <algorithm>

namespace bbfill {

Loop::Loop(const BlockedProduct& X, const Point& base) : X_(&X), buf_{base} {
  gap_begin_ = gap_end_ = buf_.size();
}

Loop Loop::from_vertices(const BlockedProduct& X, std::span<const Point> vertices) {
  if (vertices.empty()) throw Error("a loop needs at least its base vertex");
  if (vertices.front() != vertices.back()) throw Error("vertex path does not close up");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (X.height(vertices[i]) != 0) {
      throw Error("vertex " + std::to_string(i) + " is not in the zero-level set");
    }
    if (i + 1 < vertices.size() && vertices[i] != vertices[i + 1] && !X.edge_between(vertices[i], vertices[i + 1])) {
      throw Error("vertices " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not adjacent");
    }
  }
  Loop loop(X, vertices.front());
  loop.splice(1, 0, vertices.subspan(1));
  return loop;
}

Loop Loop::from_steps(const BlockedProduct& X, const Point& base,
                      std::span<const std::optional<EdgeStep>> steps) {
  std::vector<Point> vertices{base};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!steps[i]) {
      vertices.push_back(vertices.back());
      continue;
    }
    auto next = X.apply(vertices.back(), *steps[i]);
    if (!next) throw Error("step " + std::to_string(i) + " is not a level-set edge");
    vertices.push_back(*next);
  }
  return from_vertices(X, vertices);
}

std::optional<EdgeStep> Loop::step(std::size_t i) const {
  if (is_stay(i)) return std::nullopt;
  return X_->edge_between(vertex(i), vertex(i + 1));
}

std::vector<Point> Loop::vertices() const {
  std::vector<Point> out;
  out.reserve(size());
  out.insert(out.end(), buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(gap_begin_));
  out.insert(out.end(), buf_.begin() + static_cast<std::ptrdiff_t>(gap_end_), buf_.end());
  return out;
}

std::vector<std::optional<EdgeStep>> Loop::steps() const {
  std::vector<std::optional<EdgeStep>> out;
  out.reserve(length());
  for (std::size_t i = 0; i < length(); ++i) out.push_back(step(i));
  return out;
}

Loop Loop::reversed() const {
  auto v = vertices();
  std::reverse(v.begin(), v.end());
  Loop out(*X_, v.front());
  out.splice(1, 0, std::span<const Point>(v).subspan(1));
  return out;
}

void Loop::move_gap(std::size_t to) {
  if (to < gap_begin_) {
    const std::size_t n = gap_begin_ - to;
    std::move_backward(buf_.begin() + static_cast<std::ptrdiff_t>(to),
                       buf_.begin() + static_cast<std::ptrdiff_t>(gap_begin_),
                       buf_.begin() + static_cast<std::ptrdiff_t>(gap_end_));
    gap_begin_ -= n;
    gap_end_ -= n;
  } else if (to > gap_begin_) {
    const std::size_t n = to - gap_begin_;
    std::move(buf_.begin() + static_cast<std::ptrdiff_t>(gap_end_),
              buf_.begin() + static_cast<std::ptrdiff_t>(gap_end_ + n),
              buf_.begin() + static_cast<std::ptrdiff_t>(gap_begin_));
    gap_begin_ += n;
    gap_end_ += n;
  }
}

void Loop::splice(std::size_t first, std::size_t remove, std::span<const Point> insert) {
  move_gap(first);
  gap_end_ += remove;
  if (gap_end_ - gap_begin_ < insert.size()) {
    const std::size_t tail = buf_.size() - gap_end_;
    const std::size_t grow = std::max<std::size_t>(insert.size(), buf_.size() / 2 + 16);
    buf_.resize(buf_.size() + grow);
    std::move_backward(buf_.end() - static_cast<std::ptrdiff_t>(tail + grow),
                       buf_.end() - static_cast<std::ptrdiff_t>(grow), buf_.end());
    gap_end_ += grow;
  }
  std::copy(insert.begin(), insert.end(), buf_.begin() + static_cast<std::ptrdiff_t>(gap_begin_));
  gap_begin_ += insert.size();
}

Move Move::cell(std::size_t pos, const TriangleCell& cell, int arc) {
  Move m;
  m.kind = MoveKind::Cell;
  m.pos = static_cast<std::uint32_t>(pos);
  m.arc = static_cast<std::uint8_t>(arc);
  m.slice = static_cast<std::uint8_t>(cell.slice);
  for (int i = 0; i < 3; ++i) {
    m.trees[i] = static_cast<std::int8_t>(cell.trees[i]);
    m.letters[i] = cell.letters[i];
    m.bottoms[i] = cell.bottom(i);
  }
  return m;
}

Move Move::reduce(std::size_t pos) {
  Move m;
  m.kind = MoveKind::Reduce;
  m.pos = static_cast<std::uint32_t>(pos);
  return m;
}

Move Move::insert(std::size_t pos, const EdgeStep& step) {
  Move m;
  m.kind = MoveKind::Insert;
  m.pos = static_cast<std::uint32_t>(pos);
  m.trees = {static_cast<std::int8_t>(step.up.tree), static_cast<std::int8_t>(step.down.tree), 0};
  m.letters = {step.up.letter, step.down.letter, Letter()};
  return m;
}

Move Move::insert_stay(std::size_t pos) {
  Move m;
  m.kind = MoveKind::Insert;
  m.pos = static_cast<std::uint32_t>(pos);
  m.stay = true;
  return m;
}

EdgeStep Move::edge() const {
  return EdgeStep{TreeMove{trees[0], letters[0]}, TreeMove{trees[1], letters[1]}};
}

Move Move::shifted(std::size_t offset) const {
  Move m = *this;
  m.pos = static_cast<std::uint32_t>(pos + offset);
  return m;
}

std::optional<TriangleCell> move_cell(const BlockedProduct& X, const Move& move, const Point& at) {
  return make_triangle(X, {move.trees[0], move.trees[1], move.trees[2]}, move.bottoms, move.letters,
                       move.slice, at);
}

std::size_t Trace::area() const {
  return static_cast<std::size_t>(
      std::count_if(moves.begin(), moves.end(), [](const Move& m) { return m.kind == MoveKind::Cell; }));
}

namespace {

void apply_cell(Loop& loop, const Move& move) {
  const std::size_t pos = move.pos;
  const std::size_t arc = move.arc;
  if (arc < 1 || arc > 3) throw MoveError(pos, "cell arc length must be 1, 2 or 3");
  if (pos + arc > loop.length()) throw MoveError(pos, "cell arc runs past the end of the loop");
  const BlockedProduct& X = loop.product();
  auto cell = move_cell(X, move, loop.vertex(pos));
  if (!cell) throw MoveError(pos, "named triangle is not a cell of the level set");
  const auto verts = cell->vertices(X);
  const auto at = [&](int i) -> const Point& { return verts[static_cast<std::size_t>(((i % 3) + 3) % 3)]; };

  const auto it = std::find(verts.begin(), verts.end(), loop.vertex(pos));
  if (it == verts.end()) throw MoveError(pos, "loop vertex is not a corner of the triangle");
  const int a = static_cast<int>(it - verts.begin());
  int dir = 0;
  if (loop.vertex(pos + 1) == at(a + 1)) dir = 1;
  else if (loop.vertex(pos + 1) == at(a - 1)) dir = -1;
  else throw MoveError(pos, "first arc step does not follow the triangle boundary");
  for (std::size_t k = 2; k <= arc; ++k) {
    if (loop.vertex(pos + k) != at(a + dir * static_cast<int>(k))) {
      throw MoveError(pos, "arc step " + std::to_string(k) + " leaves the triangle boundary");
    }
  }
  if (arc == 1) {
    const Point third = at(a - dir);
    loop.splice(pos + 1, 0, std::span<const Point>(&third, 1));
  } else {
    loop.splice(pos + 1, arc - 1 + (arc == 3 ? 1 : 0), {});
  }
}

}  // namespace

void apply_move(Loop& loop, const Move& move) {
  const std::size_t pos = move.pos;
  switch (move.kind) {
    case MoveKind::Cell:
      apply_cell(loop, move);
      return;
    case MoveKind::Reduce:
      if (pos >= loop.length()) throw MoveError(pos, "reduce past the end of the loop");
      if (loop.is_stay(pos)) {
        loop.splice(pos + 1, 1, {});
        return;
      }
      if (pos + 1 >= loop.length() || loop.vertex(pos + 2) != loop.vertex(pos)) {
        throw MoveError(pos, "steps do not form a backtrack");
      }
      loop.splice(pos + 1, 2, {});
      return;
    case MoveKind::Insert: {
      if (pos > loop.length()) throw MoveError(pos, "insert past the end of the loop");
      const Point here = loop.vertex(pos);
      if (move.stay) {
        loop.splice(pos + 1, 0, std::span<const Point>(&here, 1));
        return;
      }
      auto next = loop.product().apply(here, move.edge());
      if (!next) throw MoveError(pos, "inserted step is not a level-set edge");
      const Point pair[2] = {*next, here};
      loop.splice(pos + 1, 0, pair);
      return;
    }
  }
  throw MoveError(pos, "unknown move kind");
}

FillReport verify(const Loop& loop, const Trace& trace) {
  FillReport report;
  Loop work = loop;
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    try {
      apply_move(work, trace.moves[i]);
    } catch (const MoveError& e) {
      report.failed_move = i;
      report.message = "move " + std::to_string(i) + ": " + e.what();
      report.final_length = work.length();
      return report;
    }
    if (trace.moves[i].kind == MoveKind::Cell) ++report.area;
  }
  report.final_length = work.length();
  report.verified = work.length() == 0;
  if (!report.verified) {
    report.message = "trace ends with " + std::to_string(work.length()) + " steps left";
  }
  return report;
}

Trace reverse(const Loop& loop, const Trace& trace) {
  Trace out;
  out.moves.reserve(trace.moves.size());
  Loop work = loop;
  for (const Move& m : trace.moves) {
    const std::size_t n = work.length();
    Move r = m;
    switch (m.kind) {
      case MoveKind::Cell:
        r.pos = static_cast<std::uint32_t>(n - m.pos - m.arc);
        break;
      case MoveKind::Reduce:
        r.pos = static_cast<std::uint32_t>(n - m.pos - (work.is_stay(m.pos) ? 1 : 2));
        break;
      case MoveKind::Insert:
        r.pos = static_cast<std::uint32_t>(n - m.pos);
        break;
    }
    apply_move(work, m);
    out.moves.push_back(r);
  }
  return out;
}

Trace shifted(const Trace& trace, std::size_t offset) {
  Trace out;
  out.moves.reserve(trace.moves.size());
  for (const Move& m : trace.moves) out.moves.push_back(m.shifted(offset));
  return out;
}

Trace conjugate(const Trace& trace, std::span<const Point> prefix) {
  const std::size_t k = prefix.empty() ? 0 : prefix.size() - 1;
  Trace out = shifted(trace, k);
  for (std::size_t i = k; i-- > 0;) out.moves.push_back(Move::reduce(i));
  return out;
}

Trace concat(std::span<const Trace> traces) {
  Trace out;
  for (const Trace& t : traces) out.moves.insert(out.moves.end(), t.moves.begin(), t.moves.end());
  return out;
}

Rewrite homotopy_from_fill(const BlockedProduct& X, std::span<const Point> loop_vertices,
                           std::size_t arc_length, const Trace& fill) {
  if (loop_vertices.size() < arc_length + 1) throw Error("arc is longer than the loop");
  Rewrite rw;
  rw.from.assign(loop_vertices.begin(), loop_vertices.begin() + static_cast<std::ptrdiff_t>(arc_length + 1));
  rw.to.assign(loop_vertices.begin() + static_cast<std::ptrdiff_t>(arc_length), loop_vertices.end());
  std::reverse(rw.to.begin(), rw.to.end());
  // Insert s3·s3⁻¹ after the arc, then collapse s1·s2·s3 with the fill.
  for (std::size_t i = 0; i + 1 < rw.to.size(); ++i) {
    const Point& a = loop_vertices[arc_length + i];
    const Point& b = loop_vertices[arc_length + i + 1];
    if (a == b) {
      rw.moves.moves.push_back(Move::insert_stay(arc_length + i));
    } else {
      auto step = X.edge_between(a, b);
      if (!step) throw Error("loop vertices are not adjacent");
      rw.moves.moves.push_back(Move::insert(arc_length + i, *step));
    }
  }
  rw.moves.moves.insert(rw.moves.moves.end(), fill.moves.begin(), fill.moves.end());
  return rw;
}

void TraceBuilder::emit(const Move& move) {
  apply_move(*loop_, move);
  out_->moves.push_back(move);
  if (move.kind == MoveKind::Cell) ++area_;
}

void TraceBuilder::cell(std::size_t pos, int arc, const Point& third) {
  const BlockedProduct& X = product();
  std::optional<TriangleCell> tri;
  if (arc == 1) {
    tri = triangle_from_vertices(X, vertex(pos), vertex(pos + 1), third);
  } else {
    tri = triangle_from_vertices(X, vertex(pos), vertex(pos + 1), vertex(pos + 2));
  }
  if (!tri) throw MoveError(pos, "requested vertices do not span a triangle");
  emit(Move::cell(pos, *tri, arc));
}

void TraceBuilder::insert_detour(std::size_t pos, std::span<const Point> path) {
  if (path.empty()) return;
  if (path.front() != vertex(pos)) throw MoveError(pos, "detour does not start at the loop vertex");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == path[i + 1]) {
      insert_stay(pos + i);
      continue;
    }
    auto step = product().edge_between(path[i], path[i + 1]);
    if (!step) throw MoveError(pos + i, "detour vertices are not adjacent");
    insert(pos + i, *step);
  }
}

std::size_t TraceBuilder::reduce_window(std::size_t pos, std::size_t length) {
  std::size_t end = pos + length;
  std::size_t i = pos;
  while (i < end) {
    if (loop_->is_stay(i)) {
      reduce(i);
      --end;
      continue;
    }
    if (i > pos && vertex(i - 1) == vertex(i + 1)) {
      reduce(i - 1);
      end -= 2;
      --i;
      continue;
    }
    ++i;
  }
  return end - pos;
}

}  // namespace bbfill
