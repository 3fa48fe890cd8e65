#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "gridatlas/error.hpp"

namespace gridatlas {

/// Row or column index inside a grid. Grids are capped at 255 so a cell fits a byte.
using Cell = std::uint8_t;
using CellArray = boost::container::small_vector<Cell, 16>;

inline constexpr int kMaxGridSize = 255;

/// An n x n grid with one X and one O per row and column.
///
/// Columns run 0..n-1 left to right and rows 0..n-1 bottom to top. Column c
/// holds its X in row x_row(c) and its O in row o_row(c). Horizontal segments
/// are oriented O -> X, vertical segments X -> O, and vertical segments pass
/// over horizontal ones. Instances only come out of validate() (or operations
/// on valid diagrams), so every GridDiagram satisfies the grid invariants.
class GridDiagram {
 public:
  int size() const { return static_cast<int>(x_.size()); }
  int x_row(int column) const { return x_[static_cast<std::size_t>(column)]; }
  int o_row(int column) const { return o_[static_cast<std::size_t>(column)]; }
  int x_col(int row) const { return x_inv_[static_cast<std::size_t>(row)]; }
  int o_col(int row) const { return o_inv_[static_cast<std::size_t>(row)]; }

  std::vector<int> x_rows() const { return {x_.begin(), x_.end()}; }
  std::vector<int> o_rows() const { return {o_.begin(), o_.end()}; }
  const CellArray& x_cells() const { return x_; }
  const CellArray& o_cells() const { return o_; }

  friend bool operator==(const GridDiagram& a, const GridDiagram& b) { return a.x_ == b.x_ && a.o_ == b.o_; }
  friend bool operator!=(const GridDiagram& a, const GridDiagram& b) { return !(a == b); }

  friend GridDiagram validate(std::span<const int> x_row, std::span<const int> o_row);

  /// Trusted constructor for operations that preserve the invariants by construction.
  static GridDiagram from_cells_unchecked(CellArray x, CellArray o) {
    GridDiagram g;
    g.x_ = std::move(x);
    g.o_ = std::move(o);
    g.rebuild_inverses();
    return g;
  }

 private:
  void rebuild_inverses() {
    x_inv_.resize(x_.size());
    o_inv_.resize(o_.size());
    for (std::size_t c = 0; c < x_.size(); ++c) {
      x_inv_[x_[c]] = static_cast<Cell>(c);
      o_inv_[o_[c]] = static_cast<Cell>(c);
    }
  }

  CellArray x_;
  CellArray o_;
  CellArray x_inv_;
  CellArray o_inv_;
};

/// Checks the grid invariants and builds a diagram, or throws Error.
inline GridDiagram validate(std::span<const int> x_row, std::span<const int> o_row) {
  if (x_row.size() != o_row.size() || x_row.empty())
    throw Error(ErrorCode::SizeMismatch, "X and O arrays must have equal nonzero length");
  if (x_row.size() > static_cast<std::size_t>(kMaxGridSize))
    throw Error(ErrorCode::SizeMismatch, "grid larger than " + std::to_string(kMaxGridSize));
  const int n = static_cast<int>(x_row.size());
  auto check_permutation = [n](std::span<const int> rows, const char* which) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int r : rows) {
      if (r < 0 || r >= n || seen[static_cast<std::size_t>(r)])
        throw Error(ErrorCode::NotPermutation, std::string(which) + " rows are not a permutation of 0..n-1");
      seen[static_cast<std::size_t>(r)] = true;
    }
  };
  check_permutation(x_row, "X");
  check_permutation(o_row, "O");
  for (int c = 0; c < n; ++c) {
    if (x_row[static_cast<std::size_t>(c)] == o_row[static_cast<std::size_t>(c)])
      throw Error(ErrorCode::SharedSquare, "X and O share the square in column " + std::to_string(c));
  }
  GridDiagram g;
  g.x_.assign(x_row.begin(), x_row.end());
  g.o_.assign(o_row.begin(), o_row.end());
  g.rebuild_inverses();
  return g;
}

inline GridDiagram validate(const std::vector<int>& x_row, const std::vector<int>& o_row) {
  return validate(std::span<const int>(x_row), std::span<const int>(o_row));
}

// ---------------------------------------------------------------------------
// Text format:  n=<int> / X=<rows...> / O=<rows...>

inline std::string format_grid(const GridDiagram& g) {
  std::ostringstream out;
  out << "n=" << g.size() << "\nX=";
  for (int c = 0; c < g.size(); ++c) out << (c ? " " : "") << g.x_row(c);
  out << "\nO=";
  for (int c = 0; c < g.size(); ++c) out << (c ? " " : "") << g.o_row(c);
  out << "\n";
  return out.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<int> parse_int_list(const std::string& body, const std::string& line) {
  std::vector<int> values;
  std::istringstream in(body);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "non-integer token '" + token + "' in line '" + line + "'");
    }
    if (used != token.size()) throw Error(ErrorCode::Parse, "non-integer token '" + token + "' in line '" + line + "'");
    values.push_back(v);
  }
  return values;
}

}  // namespace detail

/// Parses the three-line grid format. Rejects missing lines, wrong counts, and trailing tokens.
inline GridDiagram parse_grid(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.size() != 3) throw Error(ErrorCode::Parse, "expected exactly 3 non-empty lines (n=, X=, O=)");
  auto body = [&](std::size_t i, const char* prefix) {
    const std::string& l = lines[i];
    std::string p(prefix);
    if (l.rfind(p, 0) != 0) throw Error(ErrorCode::Parse, "line " + std::to_string(i + 1) + " must start with '" + p + "'");
    return l.substr(p.size());
  };
  auto n_values = detail::parse_int_list(body(0, "n="), lines[0]);
  if (n_values.size() != 1) throw Error(ErrorCode::Parse, "n= line must hold exactly one integer");
  int n = n_values[0];
  if (n < 1) throw Error(ErrorCode::Parse, "n must be positive");
  auto x = detail::parse_int_list(body(1, "X="), lines[1]);
  auto o = detail::parse_int_list(body(2, "O="), lines[2]);
  if (static_cast<int>(x.size()) != n || static_cast<int>(o.size()) != n)
    throw Error(ErrorCode::Parse, "X= and O= must list exactly n entries");
  return validate(x, o);
}

inline GridDiagram parse_grid(const std::string& text) {
  std::istringstream in(text);
  return parse_grid(in);
}

// ---------------------------------------------------------------------------
// Topology

/// Number of link components, by tracing column -> its O's row -> that row's X column.
inline int components(const GridDiagram& g) {
  const int n = g.size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  int count = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++count;
    for (int c = start; !seen[static_cast<std::size_t>(c)]; c = g.x_col(g.o_row(c))) seen[static_cast<std::size_t>(c)] = true;
  }
  return count;
}

struct Crossing {
  int column = 0;
  int row = 0;
  int sign = 0;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// All crossings, ordered by column then row. The vertical strand is always over.
inline std::vector<Crossing> crossings(const GridDiagram& g) {
  std::vector<Crossing> out;
  const int n = g.size();
  for (int c = 0; c < n; ++c) {
    int lo = std::min(g.x_row(c), g.o_row(c));
    int hi = std::max(g.x_row(c), g.o_row(c));
    int vertical = g.o_row(c) > g.x_row(c) ? 1 : -1;
    for (int r = lo + 1; r < hi; ++r) {
      int left = std::min(g.x_col(r), g.o_col(r));
      int right = std::max(g.x_col(r), g.o_col(r));
      if (left < c && c < right) {
        int horizontal = g.x_col(r) > g.o_col(r) ? 1 : -1;
        out.push_back({c, r, -vertical * horizontal});
      }
    }
  }
  return out;
}

inline int writhe(const GridDiagram& g) {
  int w = 0;
  for (const auto& x : crossings(g)) w += x.sign;
  return w;
}

enum class CornerType { NE, NW, SE, SW };

struct CornerCensus {
  int ne = 0;
  int nw = 0;
  int se = 0;
  int sw = 0;
  /// Signed NE/SW tally: +1 traversed east/south, -1 traversed west/north.
  int signed_ne_sw = 0;
  /// Signed NW/SE tally: +1 traversed east/north, -1 traversed west/south.
  int signed_nw_se = 0;
};

/// Compass class of the marker at (column, row). `is_x` selects which marker of the column.
inline CornerType corner_type(const GridDiagram& g, int column, bool is_x) {
  int row = is_x ? g.x_row(column) : g.o_row(column);
  int partner_col = is_x ? g.o_col(row) : g.x_col(row);
  int partner_row = is_x ? g.o_row(column) : g.x_row(column);
  bool west = partner_col < column;
  bool south = partner_row < row;
  if (west) return south ? CornerType::NE : CornerType::SE;
  return south ? CornerType::NW : CornerType::SW;
}

inline CornerCensus corner_census(const GridDiagram& g) {
  CornerCensus census;
  for (int c = 0; c < g.size(); ++c) {
    for (bool is_x : {true, false}) {
      CornerType type = corner_type(g, c, is_x);
      // An X is entered horizontally and left vertically; an O the other way round.
      switch (type) {
        case CornerType::NE:
          ++census.ne;
          // X: arrive moving east, leave south. O: arrive moving north, leave west.
          census.signed_ne_sw += is_x ? 1 : -1;
          break;
        case CornerType::SW:
          ++census.sw;
          // X: arrive moving west, leave north. O: arrive moving south, leave east.
          census.signed_ne_sw += is_x ? -1 : 1;
          break;
        case CornerType::NW:
          ++census.nw;
          census.signed_nw_se += is_x ? -1 : 1;
          break;
        case CornerType::SE:
          ++census.se;
          census.signed_nw_se += is_x ? 1 : -1;
          break;
      }
    }
  }
  return census;
}

struct ClassicalInvariants {
  int tb = 0;
  int r = 0;
  int sl = 0;

  friend bool operator==(const ClassicalInvariants&, const ClassicalInvariants&) = default;
};

/// With rows counted bottom to top and vertical strands over, the front is the
/// grid turned 45 degrees counterclockwise: SE corners become right cusps and
/// NW corners left cusps. tb is the writhe minus the right cusps; r is half the
/// signed cusp tally.
inline ClassicalInvariants classical_invariants(const GridDiagram& g) {
  if (components(g) != 1) throw Error(ErrorCode::MultiComponent, "classical invariants need a knot diagram");
  CornerCensus census = corner_census(g);
  if (census.signed_nw_se % 2 != 0) throw std::logic_error("half-integral rotation number on a knot diagram");
  ClassicalInvariants inv;
  inv.tb = writhe(g) - census.se;
  inv.r = census.signed_nw_se / 2;
  inv.sl = inv.tb - inv.r;
  return inv;
}

// ---------------------------------------------------------------------------
// Symmetries

/// Orientation reversal -L: X's and O's trade places.
inline GridDiagram reverse(const GridDiagram& g) { return GridDiagram::from_cells_unchecked(g.o_cells(), g.x_cells()); }

/// Legendrian mirror mu(L): rotate the grid by 180 degrees.
inline GridDiagram mirror_mu(const GridDiagram& g) {
  const int n = g.size();
  CellArray x(static_cast<std::size_t>(n));
  CellArray o(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    x[static_cast<std::size_t>(n - 1 - c)] = static_cast<Cell>(n - 1 - g.x_row(c));
    o[static_cast<std::size_t>(n - 1 - c)] = static_cast<Cell>(n - 1 - g.o_row(c));
  }
  return GridDiagram::from_cells_unchecked(std::move(x), std::move(o));
}

/// Transverse mirror L -> -mu(L).
inline GridDiagram transverse_mirror(const GridDiagram& g) { return reverse(mirror_mu(g)); }

/// Reflection in the main diagonal.
inline GridDiagram transpose(const GridDiagram& g) {
  const int n = g.size();
  CellArray x(static_cast<std::size_t>(n));
  CellArray o(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    x[static_cast<std::size_t>(r)] = static_cast<Cell>(g.x_col(r));
    o[static_cast<std::size_t>(r)] = static_cast<Cell>(g.o_col(r));
  }
  return GridDiagram::from_cells_unchecked(std::move(x), std::move(o));
}

/// Topological mirror m(K): reflect the grid top to bottom, which reverses every crossing.
inline GridDiagram topological_mirror(const GridDiagram& g) {
  const int n = g.size();
  CellArray x(static_cast<std::size_t>(n));
  CellArray o(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    x[static_cast<std::size_t>(c)] = static_cast<Cell>(n - 1 - g.x_row(c));
    o[static_cast<std::size_t>(c)] = static_cast<Cell>(n - 1 - g.o_row(c));
  }
  return GridDiagram::from_cells_unchecked(std::move(x), std::move(o));
}

/// Cyclic shift: column c moves to c + dc, row r moves to r + dr (both mod n).
inline GridDiagram translated(const GridDiagram& g, int dc, int dr) {
  const int n = g.size();
  dc = ((dc % n) + n) % n;
  dr = ((dr % n) + n) % n;
  CellArray x(static_cast<std::size_t>(n));
  CellArray o(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    auto to = static_cast<std::size_t>((c + dc) % n);
    x[to] = static_cast<Cell>((g.x_row(c) + dr) % n);
    o[to] = static_cast<Cell>((g.o_row(c) + dr) % n);
  }
  return GridDiagram::from_cells_unchecked(std::move(x), std::move(o));
}

// ---------------------------------------------------------------------------
// Canonical keys

enum class KeyMode { oriented, unoriented };

/// Opaque identifier of a diagram modulo torus translation (and X/O swap when unoriented).
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }
  int grid_size() const {
    return bytes_.size() < 2 ? 0 : (static_cast<unsigned char>(bytes_[0]) << 8) | static_cast<unsigned char>(bytes_[1]);
  }

  /// Lowercase hex, used for cache files and JSON.
  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (unsigned char b : bytes_) {
      out += digits[b >> 4];
      out += digits[b & 15];
    }
    return out;
  }

  static CanonicalKey from_hex(const std::string& text) {
    if (text.size() % 2 != 0) throw Error(ErrorCode::Parse, "odd-length key hex");
    auto nibble = [&](char ch) -> int {
      if (ch >= '0' && ch <= '9') return ch - '0';
      if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
      throw Error(ErrorCode::Parse, "bad hex digit in key");
    };
    std::string bytes;
    for (std::size_t i = 0; i < text.size(); i += 2) bytes += static_cast<char>((nibble(text[i]) << 4) | nibble(text[i + 1]));
    return CanonicalKey(std::move(bytes));
  }

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::string bytes_;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept { return std::hash<std::string>{}(k.bytes()); }
};

namespace detail {

/// Translation (and swap) that yields the lexicographically least serialization.
struct CanonicalChoice {
  int dc = 0;  // source column that becomes column 0
  bool swapped = false;
};

inline CanonicalChoice canonical_choice(const GridDiagram& g, KeyMode mode) {
  // The least serialization always starts with first-row value 0, so for each
  // candidate leading column the row shift is forced; only n (or 2n) candidates remain.
  const int n = g.size();
  CanonicalChoice best;
  std::array<int, 2 * kMaxGridSize> best_seq{};
  std::array<int, 2 * kMaxGridSize> seq{};
  bool have = false;
  for (int swap = 0; swap < (mode == KeyMode::unoriented ? 2 : 1); ++swap) {
    const CellArray& a = swap ? g.o_cells() : g.x_cells();
    const CellArray& b = swap ? g.x_cells() : g.o_cells();
    for (int dc = 0; dc < n; ++dc) {
      int shift = n - a[static_cast<std::size_t>(dc)];
      bool better = !have;
      bool decided = !have;
      for (int c = 0; c < n; ++c) {
        auto src = static_cast<std::size_t>((c + dc) % n);
        seq[static_cast<std::size_t>(c)] = (a[src] + shift) % n;
        seq[static_cast<std::size_t>(n + c)] = (b[src] + shift) % n;
      }
      if (!decided) {
        for (int i = 0; i < 2 * n; ++i) {
          if (seq[static_cast<std::size_t>(i)] != best_seq[static_cast<std::size_t>(i)]) {
            better = seq[static_cast<std::size_t>(i)] < best_seq[static_cast<std::size_t>(i)];
            break;
          }
        }
      }
      if (better) {
        have = true;
        best = {dc, swap == 1};
        std::copy(seq.begin(), seq.begin() + 2 * n, best_seq.begin());
      }
    }
  }
  return best;
}

}  // namespace detail

/// The representative of g's class whose serialization is least.
inline GridDiagram canonical_form(const GridDiagram& g, KeyMode mode = KeyMode::oriented) {
  auto choice = detail::canonical_choice(g, mode);
  GridDiagram base = choice.swapped ? reverse(g) : g;
  int n = g.size();
  return translated(base, n - choice.dc, n - base.x_row(choice.dc));
}

/// Serialization "n | x_row | o_row" in 16-bit big-endian cells.
inline CanonicalKey serialize_key(const GridDiagram& g) {
  std::string bytes;
  bytes.reserve(static_cast<std::size_t>(4 * g.size() + 2));
  auto put = [&](int v) {
    bytes += static_cast<char>((v >> 8) & 0xff);
    bytes += static_cast<char>(v & 0xff);
  };
  put(g.size());
  for (int c = 0; c < g.size(); ++c) put(g.x_row(c));
  for (int c = 0; c < g.size(); ++c) put(g.o_row(c));
  return CanonicalKey(std::move(bytes));
}

inline CanonicalKey canonical_key(const GridDiagram& g, KeyMode mode = KeyMode::oriented) {
  return serialize_key(canonical_form(g, mode));
}

inline GridDiagram diagram_from_key(const CanonicalKey& key) {
  const std::string& b = key.bytes();
  auto get = [&](std::size_t i) { return (static_cast<unsigned char>(b[2 * i]) << 8) | static_cast<unsigned char>(b[2 * i + 1]); };
  if (b.size() < 2) throw Error(ErrorCode::Parse, "empty key");
  int n = get(0);
  if (b.size() != static_cast<std::size_t>(4 * n + 2)) throw Error(ErrorCode::Parse, "key length does not match size");
  std::vector<int> x(static_cast<std::size_t>(n));
  std::vector<int> o(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    x[static_cast<std::size_t>(c)] = get(static_cast<std::size_t>(1 + c));
    o[static_cast<std::size_t>(c)] = get(static_cast<std::size_t>(1 + n + c));
  }
  return validate(x, o);
}

inline bool is_canonical(const GridDiagram& g, KeyMode mode = KeyMode::oriented) { return canonical_form(g, mode) == g; }

}  // namespace gridatlas
