#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "gridatlas/error.hpp"
#include "gridatlas/grid.hpp"
#include "gridatlas/laurent.hpp"

namespace gridatlas {

enum class FrontEventKind { LeftCusp, RightCusp, Crossing };

/// One event of the left-to-right sweep. Positions count strands from the bottom.
/// LeftCusp inserts strands p, p+1; RightCusp joins p, p+1; Crossing swaps p, p+1.
struct FrontEvent {
  FrontEventKind kind = FrontEventKind::Crossing;
  int position = 0;
  /// Crossing only: Maslov potential of the upper-left strand minus the lower-left one.
  int degree = 0;
  /// Crossing only: sign of the knot crossing.
  int sign = 0;
};

/// Legendrian front of a grid turned 45 degrees counterclockwise: grid point (c, r)
/// lands at abscissa c - r and height c + r. Horizontal segments become strands of
/// slope +1, vertical ones slope -1. NW corners are left cusps, SE corners right
/// cusps, NE and SW corners are smoothed.
struct Front {
  std::vector<FrontEvent> events;
  /// Potential per grid segment: rows 0..n-1 first, then columns.
  std::vector<int> potential;
  /// The potential is defined modulo this (0 means over the integers); equals 2|r|.
  int modulus = 0;
  int rotation = 0;

  int right_cusps() const {
    return static_cast<int>(std::count_if(events.begin(), events.end(), [](const FrontEvent& e) { return e.kind == FrontEventKind::RightCusp; }));
  }
  int writhe() const {
    int w = 0;
    for (const auto& e : events)
      if (e.kind == FrontEventKind::Crossing) w += e.sign;
    return w;
  }
  int tb() const { return writhe() - right_cusps(); }
};

namespace detail {

inline int normalize_mod(int value, int modulus) {
  if (modulus == 0) return value;
  return ((value % modulus) + modulus) % modulus;
}

/// Maslov potential per segment by walking the knot: equal across smoothed
/// corners, upper branch one more than lower branch at each cusp.
inline std::vector<int> maslov_potential(const GridDiagram& g, int modulus) {
  const int n = g.size();
  auto row_seg = [](int r) { return r; };
  auto col_seg = [n](int c) { return n + c; };
  std::vector<int> mu(static_cast<std::size_t>(2 * n), 0);
  std::vector<bool> set(static_cast<std::size_t>(2 * n), false);
  // Start on the horizontal segment leaving the O of column 0.
  int c = 0;
  int value = 0;
  mu[static_cast<std::size_t>(row_seg(g.o_row(0)))] = 0;
  set[static_cast<std::size_t>(row_seg(g.o_row(0)))] = true;
  for (int step = 0; step < n; ++step) {
    int r = g.o_row(c);
    int cx = g.x_col(r);
    // X corner at (cx, r): horizontal r -> vertical cx.
    CornerType tx = corner_type(g, cx, true);
    if (tx == CornerType::NW) value -= 1;       // horizontal upper
    else if (tx == CornerType::SE) value += 1;  // vertical upper
    mu[static_cast<std::size_t>(col_seg(cx))] = value;
    set[static_cast<std::size_t>(col_seg(cx))] = true;
    // O corner at (cx, o_row(cx)): vertical cx -> horizontal o_row(cx).
    CornerType to = corner_type(g, cx, false);
    if (to == CornerType::NW) value += 1;
    else if (to == CornerType::SE) value -= 1;
    int next_row = g.o_row(cx);
    if (step == n - 1) {
      if (normalize_mod(value - mu[static_cast<std::size_t>(row_seg(next_row))], modulus) != 0)
        throw Error(ErrorCode::InconsistentPotential, "Maslov potential does not close up");
      break;
    }
    mu[static_cast<std::size_t>(row_seg(next_row))] = value;
    set[static_cast<std::size_t>(row_seg(next_row))] = true;
    c = cx;
  }
  for (auto& m : mu) m = normalize_mod(m, modulus);
  return mu;
}

}  // namespace detail

inline Front grid_to_front(const GridDiagram& g) {
  if (components(g) != 1) throw Error(ErrorCode::MultiComponent, "fronts are built for knot diagrams");
  const int n = g.size();
  Front f;
  f.rotation = classical_invariants(g).r;
  f.modulus = 2 * std::abs(f.rotation);
  f.potential = detail::maslov_potential(g, f.modulus);

  auto row_seg = [](int r) { return r; };
  auto col_seg = [n](int c) { return n + c; };
  // Height of a segment at abscissa t.
  auto height = [n](int seg, int t) { return seg < n ? t + 2 * seg : 2 * (seg - n) - t; };

  struct Point {
    int v;
    int col;
    int row;
    int kind;  // 0 marker X, 1 marker O, 2 crossing
    int sign;
  };
  std::map<int, std::vector<Point>> at_time;
  for (int c = 0; c < n; ++c) {
    at_time[c - g.x_row(c)].push_back({c + g.x_row(c), c, g.x_row(c), 0, 0});
    at_time[c - g.o_row(c)].push_back({c + g.o_row(c), c, g.o_row(c), 1, 0});
  }
  for (const auto& x : crossings(g)) at_time[x.column - x.row].push_back({x.column + x.row, x.column, x.row, 2, x.sign});

  std::vector<int> slice;  // segment ids, bottom to top
  auto position_of = [&](int seg) {
    auto it = std::find(slice.begin(), slice.end(), seg);
    if (it == slice.end()) throw std::logic_error("front: strand missing from slice");
    return static_cast<int>(it - slice.begin());
  };
  for (auto& [t, points] : at_time) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.v < b.v; });
    for (const Point& p : points) {
      int h = row_seg(p.row);
      int v = col_seg(p.col);
      if (p.kind == 2) {
        int k = position_of(h);
        if (k + 1 >= static_cast<int>(slice.size()) || slice[static_cast<std::size_t>(k + 1)] != v)
          throw std::logic_error("front: crossing strands not adjacent");
        FrontEvent e{FrontEventKind::Crossing, k,
                     detail::normalize_mod(f.potential[static_cast<std::size_t>(v)] - f.potential[static_cast<std::size_t>(h)], f.modulus),
                     p.sign};
        f.events.push_back(e);
        std::swap(slice[static_cast<std::size_t>(k)], slice[static_cast<std::size_t>(k + 1)]);
        continue;
      }
      switch (corner_type(g, p.col, p.kind == 0)) {
        case CornerType::NW: {
          int k = static_cast<int>(std::count_if(slice.begin(), slice.end(), [&](int s) { return height(s, t) < p.v; }));
          slice.insert(slice.begin() + k, {v, h});
          f.events.push_back({FrontEventKind::LeftCusp, k, 0, 0});
          break;
        }
        case CornerType::SE: {
          int k = position_of(h);
          if (k + 1 >= static_cast<int>(slice.size()) || slice[static_cast<std::size_t>(k + 1)] != v)
            throw std::logic_error("front: cusp strands not adjacent");
          slice.erase(slice.begin() + k, slice.begin() + k + 2);
          f.events.push_back({FrontEventKind::RightCusp, k, 0, 0});
          break;
        }
        case CornerType::NE:  // horizontal arrives, vertical leaves to the right
          slice[static_cast<std::size_t>(position_of(h))] = v;
          break;
        case CornerType::SW:  // vertical arrives, horizontal leaves
          slice[static_cast<std::size_t>(position_of(v))] = h;
          break;
      }
    }
  }
  if (!slice.empty()) throw std::logic_error("front: strands left after the sweep");
  return f;
}

/// Degree of every crossing, in sweep order.
inline std::vector<int> maslov_and_degrees(const Front& f) {
  std::vector<int> out;
  for (const auto& e : f.events)
    if (e.kind == FrontEventKind::Crossing) out.push_back(e.degree);
  return out;
}

enum class RulingMode { ungraded, zero_graded };

struct RulingPolynomial {
  LaurentPolynomial value;  // in z
  RulingMode mode = RulingMode::ungraded;

  /// "2+z^2"; the empty ruling set prints as the empty-set sign.
  std::string to_string() const { return value.is_zero() ? "∅" : value.to_string("z"); }
};

namespace detail {

/// The three normal configurations at a switch of strands k, k+1 whose partners are a and b.
inline bool normal_switch(int k, int a, int b) {
  bool disjoint = a < k && b > k + 1;
  bool nested_below = b < a && a < k;
  bool nested_above = k + 1 < b && b < a;
  return disjoint || nested_below || nested_above;
}

}  // namespace detail

/// Sum over normal rulings of z^(#switches - #right cusps + 1).
inline RulingPolynomial ruling_polynomial(const Front& f, RulingMode mode) {
  if (mode == RulingMode::zero_graded && f.rotation != 0)
    throw Error(ErrorCode::NonZeroRotation, "zero-graded rulings need rotation number 0");
  if (f.events.empty()) throw Error(ErrorCode::Disconnected, "empty front");
  // State: partner position of every strand position; value: count per number of switches.
  using Pairing = std::vector<int>;
  std::map<Pairing, std::map<int, std::int64_t>> states;
  states[{}][0] = 1;
  for (const auto& e : f.events) {
    std::map<Pairing, std::map<int, std::int64_t>> next;
    const int k = e.position;
    for (const auto& [pairing, counts] : states) {
      auto add = [&](const Pairing& p, int extra_switches) {
        auto& bucket = next[p];
        for (auto [s, c] : counts) bucket[s + extra_switches] += c;
      };
      switch (e.kind) {
        case FrontEventKind::LeftCusp: {
          Pairing p;
          for (int partner : pairing) p.push_back(partner >= k ? partner + 2 : partner);
          p.insert(p.begin() + k, {k + 1, k});
          add(p, 0);
          break;
        }
        case FrontEventKind::RightCusp: {
          if (pairing[static_cast<std::size_t>(k)] != k + 1) break;
          Pairing p;
          for (int i = 0; i < static_cast<int>(pairing.size()); ++i) {
            if (i == k || i == k + 1) continue;
            int partner = pairing[static_cast<std::size_t>(i)];
            p.push_back(partner > k + 1 ? partner - 2 : partner);
          }
          add(p, 0);
          break;
        }
        case FrontEventKind::Crossing: {
          int a = pairing[static_cast<std::size_t>(k)];
          int b = pairing[static_cast<std::size_t>(k + 1)];
          if (a == k + 1) break;  // paired strands may not cross
          // Pass: strands trade places, so their partners trade positions.
          Pairing pass = pairing;
          std::swap(pass[static_cast<std::size_t>(k)], pass[static_cast<std::size_t>(k + 1)]);
          pass[static_cast<std::size_t>(a)] = k + 1;
          pass[static_cast<std::size_t>(b)] = k;
          add(pass, 0);
          bool allowed = mode == RulingMode::ungraded || e.degree == 0;
          if (allowed && detail::normal_switch(k, a, b)) add(pairing, 1);
          break;
        }
      }
    }
    states = std::move(next);
  }
  RulingPolynomial out;
  out.mode = mode;
  const int cusps = f.right_cusps();
  for (const auto& [pairing, counts] : states) {
    if (!pairing.empty()) throw std::logic_error("ruling: strands left open");
    for (auto [s, c] : counts) out.value += LaurentPolynomial::monomial(c, s - cusps + 1);
  }
  return out;
}

inline RulingPolynomial ruling_polynomial(const GridDiagram& g, RulingMode mode) { return ruling_polynomial(grid_to_front(g), mode); }

/// Atlas cell text: "-" when zero-graded rulings are undefined (r != 0), else the polynomial or the empty-set sign.
inline std::string ruling_cell(const GridDiagram& g, RulingMode mode) {
  Front f = grid_to_front(g);
  if (mode == RulingMode::zero_graded && f.rotation != 0) return "-";
  return ruling_polynomial(f, mode).to_string();
}

}  // namespace gridatlas
