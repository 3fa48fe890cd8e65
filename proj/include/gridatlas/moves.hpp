#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gridatlas/error.hpp"
#include "gridatlas/grid.hpp"

namespace gridatlas {

enum class Direction { up, down, left, right };
enum class Axis { row, col };

/// X stabilization variants, named by the corner of the new 2x2 block that holds the O.
enum class StabVariant { NE, NW, SE, SW };

enum class EquivalenceMode { topological, legendrian, transverse };

struct TorusTranslate {
  Direction direction = Direction::up;
  friend bool operator==(const TorusTranslate&, const TorusTranslate&) = default;
};

/// Swap row (or column) `index` with `index + 1`.
struct Commute {
  Axis axis = Axis::row;
  int index = 0;
  friend bool operator==(const Commute&, const Commute&) = default;
};

/// Replace the X of `column` by a 2x2 block.
struct StabilizeX {
  int column = 0;
  StabVariant variant = StabVariant::NE;
  friend bool operator==(const StabilizeX&, const StabilizeX&) = default;
};

/// Collapse the 2x2 block whose O sits at (column, row).
struct DestabilizeX {
  int column = 0;
  int row = 0;
  StabVariant variant = StabVariant::NE;
  friend bool operator==(const DestabilizeX&, const DestabilizeX&) = default;
};

using Move = std::variant<TorusTranslate, Commute, StabilizeX, DestabilizeX>;
using MovePath = std::vector<Move>;

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::up: return "up";
    case Direction::down: return "down";
    case Direction::left: return "left";
    case Direction::right: return "right";
  }
  return "?";
}

inline const char* to_string(StabVariant v) {
  switch (v) {
    case StabVariant::NE: return "NE";
    case StabVariant::NW: return "NW";
    case StabVariant::SE: return "SE";
    case StabVariant::SW: return "SW";
  }
  return "?";
}

inline const char* to_string(EquivalenceMode m) {
  switch (m) {
    case EquivalenceMode::topological: return "top";
    case EquivalenceMode::legendrian: return "leg";
    case EquivalenceMode::transverse: return "trans";
  }
  return "?";
}

inline constexpr StabVariant kAllVariants[] = {StabVariant::NE, StabVariant::NW, StabVariant::SE, StabVariant::SW};

inline bool variant_allowed(StabVariant v, EquivalenceMode mode) {
  switch (mode) {
    case EquivalenceMode::topological: return true;
    case EquivalenceMode::legendrian: return v == StabVariant::NE || v == StabVariant::SW;
    case EquivalenceMode::transverse: return v != StabVariant::NW;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Translation and commutation

inline GridDiagram torus_translate(const GridDiagram& g, Direction d) {
  switch (d) {
    case Direction::up: return translated(g, 0, 1);
    case Direction::down: return translated(g, 0, -1);
    case Direction::right: return translated(g, 1, 0);
    case Direction::left: return translated(g, -1, 0);
  }
  return g;
}

namespace detail {

/// Closed intervals [a0,a1] and [b0,b1] are disjoint or one lies strictly inside the other.
inline bool disjoint_or_nested(int a0, int a1, int b0, int b1) {
  if (a0 > a1) std::swap(a0, a1);
  if (b0 > b1) std::swap(b0, b1);
  if (a1 < b0 || b1 < a0) return true;
  if (a0 < b0 && b1 < a1) return true;
  if (b0 < a0 && a1 < b1) return true;
  return false;
}

}  // namespace detail

inline bool is_legal(const GridDiagram& g, const Commute& m) {
  if (m.index < 0 || m.index + 1 >= g.size()) return false;
  int i = m.index;
  if (m.axis == Axis::col) return detail::disjoint_or_nested(g.x_row(i), g.o_row(i), g.x_row(i + 1), g.o_row(i + 1));
  return detail::disjoint_or_nested(g.x_col(i), g.o_col(i), g.x_col(i + 1), g.o_col(i + 1));
}

inline std::vector<Commute> legal_commutations(const GridDiagram& g) {
  std::vector<Commute> out;
  for (Axis axis : {Axis::row, Axis::col}) {
    for (int i = 0; i + 1 < g.size(); ++i) {
      Commute m{axis, i};
      if (is_legal(g, m)) out.push_back(m);
    }
  }
  return out;
}

inline GridDiagram commute(const GridDiagram& g, const Commute& m) {
  if (!is_legal(g, m))
    throw Error(ErrorCode::IllegalCommutation,
                std::string(m.axis == Axis::row ? "rows " : "columns ") + std::to_string(m.index) + "/" +
                    std::to_string(m.index + 1) + " interleave or share an endpoint");
  CellArray x = g.x_cells();
  CellArray o = g.o_cells();
  auto i = static_cast<std::size_t>(m.index);
  if (m.axis == Axis::col) {
    std::swap(x[i], x[i + 1]);
    std::swap(o[i], o[i + 1]);
  } else {
    for (auto* cells : {&x, &o}) {
      for (auto& r : *cells) {
        if (r == i) r = static_cast<Cell>(i + 1);
        else if (r == i + 1) r = static_cast<Cell>(i);
      }
    }
  }
  return GridDiagram::from_cells_unchecked(std::move(x), std::move(o));
}

// ---------------------------------------------------------------------------
// Stabilization

namespace detail {

inline bool inner_right(StabVariant v) { return v == StabVariant::NE || v == StabVariant::SE; }
inline bool inner_top(StabVariant v) { return v == StabVariant::NE || v == StabVariant::NW; }

inline StabVariant variant_from(bool right, bool top) {
  if (right) return top ? StabVariant::NE : StabVariant::SE;
  return top ? StabVariant::NW : StabVariant::SW;
}

}  // namespace detail

/// Splits the X of column c and its row in two. The O of the new block lands in
/// the corner named by the variant; the other half-column and half-row keep the
/// markers that previously shared the X's column and row.
inline GridDiagram stabilize_x(const GridDiagram& g, int c, StabVariant v) {
  const int n = g.size();
  if (c < 0 || c >= n) throw Error(ErrorCode::IllegalMove, "stabilization column out of range");
  if (n + 1 > kMaxGridSize) throw Error(ErrorCode::IllegalMove, "stabilization exceeds maximum grid size");
  const int r = g.x_row(c);
  const bool right = detail::inner_right(v);
  const bool top = detail::inner_top(v);
  const int inner_c = right ? c + 1 : c;
  const int outer_c = right ? c : c + 1;
  const int inner_r = top ? r + 1 : r;
  const int outer_r = top ? r : r + 1;
  auto shift_row = [r](int row) { return row < r ? row : row + 1; };
  CellArray x(static_cast<std::size_t>(n + 1));
  CellArray o(static_cast<std::size_t>(n + 1));
  for (int j = 0; j < n; ++j) {
    if (j == c) continue;
    auto to = static_cast<std::size_t>(j < c ? j : j + 1);
    x[to] = static_cast<Cell>(shift_row(g.x_row(j)));  // never r: the only X in row r is column c
    o[to] = static_cast<Cell>(g.o_row(j) == r ? outer_r : shift_row(g.o_row(j)));
  }
  x[static_cast<std::size_t>(inner_c)] = static_cast<Cell>(outer_r);
  o[static_cast<std::size_t>(inner_c)] = static_cast<Cell>(inner_r);
  x[static_cast<std::size_t>(outer_c)] = static_cast<Cell>(inner_r);
  o[static_cast<std::size_t>(outer_c)] = static_cast<Cell>(shift_row(g.o_row(c)));
  return GridDiagram::from_cells_unchecked(std::move(x), std::move(o));
}

struct MoveResult {
  MovePath moves;
  GridDiagram result;
};

namespace detail {

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

/// Destabilizing block at the O of column c, if any: the X's sharing the O's
/// column and row must sit in cyclically adjacent rows and columns.
inline std::optional<DestabilizeX> destab_block_at(const GridDiagram& g, int c) {
  const int n = g.size();
  if (n < 3) return std::nullopt;
  const int r = g.o_row(c);
  const int xr = g.x_row(c);
  const int xc = g.x_col(r);
  bool col_adjacent = xc == wrap(c + 1, n) || xc == wrap(c - 1, n);
  bool row_adjacent = xr == wrap(r + 1, n) || xr == wrap(r - 1, n);
  if (!col_adjacent || !row_adjacent) return std::nullopt;
  if (g.o_row(xc) == xr) return std::nullopt;  // the four markers would close up a separate unknot
  bool right = xc == wrap(c - 1, n);  // the outer column is left of the O
  bool top = xr == wrap(r - 1, n);
  return DestabilizeX{c, r, variant_from(right, top)};
}

}  // namespace detail

/// Removes the block of a DestabilizeX move: the O's column and row disappear,
/// and the X of the outer column moves to the outer row.
inline GridDiagram destabilize(const GridDiagram& g, const DestabilizeX& m) {
  const int n = g.size();
  if (m.column < 0 || m.column >= n || g.o_row(m.column) != m.row)
    throw Error(ErrorCode::IllegalMove, "no O at the destabilization position");
  auto block = detail::destab_block_at(g, m.column);
  if (!block || block->variant != m.variant)
    throw Error(ErrorCode::IllegalMove, "no " + std::string(to_string(m.variant)) + " destabilization block at that O");
  const int c = m.column;
  const int r = m.row;
  const int outer_c = g.x_col(r);
  const int outer_r = g.x_row(c);
  auto shift_row = [r](int row) { return row < r ? row : row - 1; };
  CellArray x;
  CellArray o;
  for (int j = 0; j < n; ++j) {
    if (j == c) continue;
    int xr = j == outer_c ? outer_r : g.x_row(j);
    x.push_back(static_cast<Cell>(shift_row(xr)));
    o.push_back(static_cast<Cell>(shift_row(g.o_row(j))));
  }
  return GridDiagram::from_cells_unchecked(std::move(x), std::move(o));
}

/// All X destabilizations allowed by the mode, including blocks that wrap around the torus.
inline std::vector<MoveResult> destabilizations(const GridDiagram& g, EquivalenceMode mode) {
  std::vector<MoveResult> out;
  for (int c = 0; c < g.size(); ++c) {
    auto block = detail::destab_block_at(g, c);
    if (!block || !variant_allowed(block->variant, mode)) continue;
    out.push_back({{*block}, destabilize(g, *block)});
  }
  return out;
}

/// Commutation, stabilization and destabilization edges out of g. Wrapped
/// commutations (last and first row or column) appear as a translation followed
/// by a commutation of indices 0 and 1.
inline std::vector<MoveResult> neighbors(const GridDiagram& g, EquivalenceMode mode, int max_size) {
  std::vector<MoveResult> out;
  const int n = g.size();
  for (const auto& m : legal_commutations(g)) out.push_back({{m}, commute(g, m)});
  if (n >= 3) {
    GridDiagram up = torus_translate(g, Direction::up);
    Commute row0{Axis::row, 0};
    if (is_legal(up, row0)) out.push_back({{TorusTranslate{Direction::up}, row0}, commute(up, row0)});
    GridDiagram right = torus_translate(g, Direction::right);
    Commute col0{Axis::col, 0};
    if (is_legal(right, col0)) out.push_back({{TorusTranslate{Direction::right}, col0}, commute(right, col0)});
  }
  if (n < max_size) {
    for (int c = 0; c < n; ++c) {
      for (StabVariant v : kAllVariants) {
        if (!variant_allowed(v, mode)) continue;
        StabilizeX m{c, v};
        out.push_back({{m}, stabilize_x(g, c, v)});
      }
    }
  }
  for (auto& d : destabilizations(g, mode)) out.push_back(std::move(d));
  return out;
}

// ---------------------------------------------------------------------------
// Application and text form

inline GridDiagram apply_move(const GridDiagram& g, const Move& m) {
  return std::visit(
      [&](const auto& mv) -> GridDiagram {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, TorusTranslate>) return torus_translate(g, mv.direction);
        else if constexpr (std::is_same_v<T, Commute>) return commute(g, mv);
        else if constexpr (std::is_same_v<T, StabilizeX>) return stabilize_x(g, mv.column, mv.variant);
        else return destabilize(g, mv);
      },
      m);
}

inline GridDiagram replay(GridDiagram g, const MovePath& path) {
  for (const auto& m : path) g = apply_move(g, m);
  return g;
}

inline bool move_allowed(const Move& m, EquivalenceMode mode) {
  if (const auto* s = std::get_if<StabilizeX>(&m)) return variant_allowed(s->variant, mode);
  if (const auto* d = std::get_if<DestabilizeX>(&m)) return variant_allowed(d->variant, mode);
  return true;
}

inline std::string to_string(const Move& m) {
  return std::visit(
      [](const auto& mv) -> std::string {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, TorusTranslate>) return std::string("TRANSLATE ") + to_string(mv.direction);
        else if constexpr (std::is_same_v<T, Commute>)
          return std::string("COMMUTE ") + (mv.axis == Axis::row ? "row " : "col ") + std::to_string(mv.index);
        else if constexpr (std::is_same_v<T, StabilizeX>)
          return std::string("STAB X ") + to_string(mv.variant) + " col " + std::to_string(mv.column);
        else
          return std::string("DESTAB X ") + to_string(mv.variant) + " at (" + std::to_string(mv.column) + "," +
                 std::to_string(mv.row) + ")";
      },
      m);
}

inline std::string format_path(const MovePath& path) {
  std::string out;
  for (const auto& m : path) out += to_string(m) + "\n";
  return out;
}

inline Move parse_move(const std::string& line) {
  static const std::regex translate_re(R"(TRANSLATE (up|down|left|right))");
  static const std::regex commute_re(R"(COMMUTE (row|col) (\d+))");
  static const std::regex stab_re(R"(STAB X (NE|NW|SE|SW) col (\d+))");
  static const std::regex destab_re(R"(DESTAB X (NE|NW|SE|SW) at \((\d+),(\d+)\))");
  auto variant = [](const std::string& s) {
    if (s == "NE") return StabVariant::NE;
    if (s == "NW") return StabVariant::NW;
    if (s == "SE") return StabVariant::SE;
    return StabVariant::SW;
  };
  std::smatch mt;
  std::string text = detail::trim(line);
  if (std::regex_match(text, mt, translate_re)) {
    std::string d = mt[1];
    Direction dir = d == "up" ? Direction::up : d == "down" ? Direction::down : d == "left" ? Direction::left : Direction::right;
    return TorusTranslate{dir};
  }
  if (std::regex_match(text, mt, commute_re)) return Commute{mt[1] == "row" ? Axis::row : Axis::col, std::stoi(mt[2])};
  if (std::regex_match(text, mt, stab_re)) return StabilizeX{std::stoi(mt[2]), variant(mt[1])};
  if (std::regex_match(text, mt, destab_re)) return DestabilizeX{std::stoi(mt[2]), std::stoi(mt[3]), variant(mt[1])};
  throw Error(ErrorCode::Parse, "unrecognized move '" + text + "'");
}

inline MovePath parse_path(std::istream& in) {
  MovePath path;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    path.push_back(parse_move(t));
  }
  return path;
}

inline MovePath parse_path(const std::string& text) {
  std::istringstream in(text);
  return parse_path(in);
}

/// Translation moves taking g to translated(g, dc, dr).
inline MovePath translation_moves(int dc, int dr, int n) {
  MovePath out;
  dc = detail::wrap(dc, n);
  dr = detail::wrap(dr, n);
  // Take the shorter way round.
  if (dc <= n - dc) out.insert(out.end(), static_cast<std::size_t>(dc), TorusTranslate{Direction::right});
  else out.insert(out.end(), static_cast<std::size_t>(n - dc), TorusTranslate{Direction::left});
  if (dr <= n - dr) out.insert(out.end(), static_cast<std::size_t>(dr), TorusTranslate{Direction::up});
  else out.insert(out.end(), static_cast<std::size_t>(n - dr), TorusTranslate{Direction::down});
  return out;
}

/// Translations taking g to its oriented canonical form.
inline MovePath moves_to_canonical(const GridDiagram& g) {
  auto choice = detail::canonical_choice(g, KeyMode::oriented);
  int n = g.size();
  return translation_moves(n - choice.dc, n - g.x_row(choice.dc), n);
}

}  // namespace gridatlas
