#pragma once

#include <vector>

#include "gridatlas/error.hpp"
#include "gridatlas/grid.hpp"
#include "gridatlas/knot_id.hpp"

namespace gridatlas {

/// Lattice points of the torus, one per column, indexed by column: point (c, row[c])
/// is the lower-left corner of cell (c, row[c]).
struct GeneratorX {
  std::vector<int> row;

  int size() const { return static_cast<int>(row.size()); }
};

/// Quarter turn counterclockwise, cell (c, r) -> (n-1-r, c), markers kept.
/// This is the frame in which the upper-right corners of the X's carry theta-hat.
inline GridDiagram theta_convention(const GridDiagram& g) {
  const int n = g.size();
  std::vector<int> x(static_cast<std::size_t>(n)), o(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    x[static_cast<std::size_t>(n - 1 - g.x_row(c))] = c;
    o[static_cast<std::size_t>(n - 1 - g.o_row(c))] = c;
  }
  return validate(x, o);
}

/// Inverse of theta_convention: quarter turn clockwise.
inline GridDiagram theta_convention_inverse(const GridDiagram& g) {
  const int n = g.size();
  std::vector<int> x(static_cast<std::size_t>(n)), o(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    x[static_cast<std::size_t>(g.x_row(c))] = n - 1 - c;
    o[static_cast<std::size_t>(g.o_row(c))] = n - 1 - c;
  }
  return validate(x, o);
}

/// Upper-right corners of the X's of a diagram already in the theta frame.
inline GeneratorX upper_right_x_corners(const GridDiagram& g) {
  const int n = g.size();
  GeneratorX gen;
  gen.row.assign(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c) gen.row[static_cast<std::size_t>((c + 1) % n)] = (g.x_row(c) + 1) % n;
  return gen;
}

namespace detail {

inline int cyc(int i, int n) { return ((i % n) + n) % n; }

/// Is there a torus rectangle with SE corner at generator column a and NW corner at
/// generator column b whose interior holds no marker and no generator point?
inline bool empty_nw_se_rectangle(const GridDiagram& g, const GeneratorX& gen, int a, int b) {
  const int n = g.size();
  const int left = b;
  const int bottom = gen.row[static_cast<std::size_t>(a)];
  const int width = cyc(a - b, n);
  const int height = cyc(gen.row[static_cast<std::size_t>(b)] - bottom, n);
  if (width == 0 || height == 0) return false;
  auto inside_cols = [&](int c) { return cyc(c - left, n) < width; };
  auto inside_rows = [&](int r) { return cyc(r - bottom, n) < height; };
  for (int c = 0; c < n; ++c) {
    if (!inside_cols(c)) continue;
    if (inside_rows(g.x_row(c)) || inside_rows(g.o_row(c))) return false;
  }
  for (int s = 1; s < width; ++s) {
    int t = cyc(gen.row[static_cast<std::size_t>(cyc(left + s, n))] - bottom, n);
    if (t > 0 && t < height) return false;
  }
  return true;
}

}  // namespace detail

/// Sufficient condition for theta-hat != 0: no empty torus rectangle has its NW and SE
/// corners at two upper-right X corners (read in the theta frame). false means inconclusive.
inline bool theta_obstruction(const GridDiagram& g) {
  if (components(g) != 1) throw Error(ErrorCode::MultiComponent, "theta-hat is defined here for knots");
  GridDiagram t = theta_convention(g);
  GeneratorX gen = upper_right_x_corners(t);
  const int n = t.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && detail::empty_nw_se_rectangle(t, gen, a, b)) return false;
  return true;
}

/// Expected self-linking bookkeeping for the non-destabilizable family indexed by n.
struct FamilySlLedger {
  int size_t2 = 0;
  int sl_t2 = 0;
  int sl_t1 = 0;
  int gap = 0;

  friend bool operator==(const FamilySlLedger&, const FamilySlLedger&) = default;
};

inline FamilySlLedger family_sl_ledger(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "family index must be positive");
  return {3 * n + 7, 2 * n + 1, 4 * n + 1, 2 * n};
}

/// (s1..s_{n+2}) s_{n+2} s_{n+1}^-3 s_n..s1 (s1..s_{n+2}) s_n..s1 (s1..s_{n+2}) in B_{n+3}.
inline BraidWord family_braid(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "family index must be positive");
  BraidWord b;
  b.strands = n + 3;
  auto up = [&] {
    for (int i = 1; i <= n + 2; ++i) b.letters.push_back(i);
  };
  auto down = [&] {
    for (int i = n; i >= 1; --i) b.letters.push_back(i);
  };
  up();
  b.letters.push_back(n + 2);
  for (int i = 0; i < 3; ++i) b.letters.push_back(-(n + 1));
  down();
  up();
  down();
  up();
  return b;
}

/// s2^-2 s1 (s2^2 s1^2)^(n+1) s2 in B_3, the flyped form of family_braid(n).
inline BraidWord family_braid_three_strand(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "family index must be positive");
  BraidWord b;
  b.strands = 3;
  b.letters = {-2, -2, 1};
  for (int i = 0; i <= n; ++i) b.letters.insert(b.letters.end(), {2, 2, 1, 1});
  b.letters.push_back(2);
  return b;
}

}  // namespace gridatlas
