#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gridatlas/search.hpp"

namespace gridatlas {

/// One (tb, r) lattice point of a mountain range.
struct RangePoint {
  int tb = 0;
  int r = 0;
  /// Representatives of the (conjecturally) distinct classes at this point.
  std::vector<GridDiagram> representatives;
  bool peak = false;
  /// Multi-class points only: whether the S+ / S- images all connected.
  bool probed = false;
  bool merged_plus = false;
  bool merged_minus = false;

  int multiplicity() const { return static_cast<int>(representatives.size()); }
  bool boxed() const { return multiplicity() > 1; }
  bool persists() const { return boxed() && probed && !merged_plus && !merged_minus; }
};

struct RangeArrow {
  std::pair<int, int> from;  // (tb, r)
  std::pair<int, int> to;
  bool positive = true;  // S+ : (tb-1, r+1), S- : (tb-1, r-1)
};

struct MountainRange {
  std::string knot;
  /// Sorted by tb descending, then r ascending.
  std::vector<RangePoint> points;
  std::vector<RangeArrow> arrows;
  int budget_hits = 0;

  const RangePoint* find(int tb, int r) const {
    for (const auto& p : points)
      if (p.tb == tb && p.r == r) return &p;
    return nullptr;
  }
};

inline GridDiagram stabilize_plus(const GridDiagram& g) { return stabilize_x(g, 0, StabVariant::NW); }
inline GridDiagram stabilize_minus(const GridDiagram& g) { return stabilize_x(g, 0, StabVariant::SE); }

namespace detail {

/// Splits diagrams (all with the same tb, r) into Legendrian classes by pairwise search.
inline std::vector<GridDiagram> distinct_classes(const std::vector<GridDiagram>& diagrams, const SearchBudget& budget, int& hits) {
  std::vector<GridDiagram> reps;
  for (const auto& g : diagrams) {
    bool found = false;
    for (const auto& h : reps) {
      SearchBudget b = budget;
      b.max_size = std::max({budget.max_size, g.size(), h.size()});
      IsotopyVerdict v = connect(g, h, EquivalenceMode::legendrian, b);
      if (v.connected) {
        found = true;
        break;
      }
      if (!v.stats.stopped_by.empty()) ++hits;
    }
    if (!found) reps.push_back(g);
  }
  return reps;
}

inline bool all_connected(const std::vector<GridDiagram>& diagrams, const SearchBudget& budget, int& hits) {
  return distinct_classes(diagrams, budget, hits).size() <= 1;
}

}  // namespace detail

/// Mountain range of one knot type from its class table. Peaks are points with no class
/// one step above them. Rows are extended `depth` stabilization levels below the lowest
/// peak by probing S+ / S- images; multi-class points record whether they merge.
inline MountainRange mountain_range(const std::string& knot, const ClassTable& table, const SearchBudget& probe_budget, int depth = 1) {
  MountainRange mr;
  mr.knot = knot;
  std::map<std::pair<int, int>, std::vector<GridDiagram>> at;  // (tb, r) -> class representatives
  for (const auto& c : table.classes)
    if (c.knot.name == knot) at[{c.invariants.tb, c.invariants.r}].push_back(c.representative);
  if (at.empty()) return mr;

  std::set<std::pair<int, int>> peaks;
  for (const auto& [key, reps] : at)
    if (!at.count({key.first + 1, key.second - 1}) && !at.count({key.first + 1, key.second + 1})) peaks.insert(key);
  int lowest_peak = std::numeric_limits<int>::max();
  for (const auto& p : peaks) lowest_peak = std::min(lowest_peak, p.first);
  int floor = std::min(lowest_peak - depth, at.begin()->first.first);
  for (const auto& [key, reps] : at) floor = std::min(floor, key.first);
  int top = at.rbegin()->first.first;
  for (const auto& [key, reps] : at) top = std::max(top, key.first);

  std::map<std::pair<int, int>, RangePoint> points;
  for (int tb = top; tb >= floor; --tb) {
    // Points at this level: table classes, else classes of incoming stabilizations.
    std::map<int, std::vector<GridDiagram>> incoming;
    if (tb < top) {
      for (auto& [key, p] : points) {
        if (key.first != tb + 1) continue;
        for (const auto& g : p.representatives) {
          incoming[key.second + 1].push_back(stabilize_plus(g));
          incoming[key.second - 1].push_back(stabilize_minus(g));
        }
        mr.arrows.push_back({key, {tb, key.second + 1}, true});
        mr.arrows.push_back({key, {tb, key.second - 1}, false});
      }
    }
    std::set<int> rs;
    for (const auto& [key, reps] : at)
      if (key.first == tb) rs.insert(key.second);
    for (const auto& [r, imgs] : incoming) rs.insert(r);
    for (int r : rs) {
      RangePoint p;
      p.tb = tb;
      p.r = r;
      p.peak = peaks.count({tb, r}) > 0;
      auto it = at.find({tb, r});
      if (it != at.end()) p.representatives = it->second;
      else p.representatives = detail::distinct_classes(incoming[r], probe_budget, mr.budget_hits);
      points[{tb, r}] = std::move(p);
    }
  }
  for (auto& [key, p] : points) {
    if (!p.boxed()) continue;
    std::vector<GridDiagram> plus, minus;
    for (const auto& g : p.representatives) {
      plus.push_back(stabilize_plus(g));
      minus.push_back(stabilize_minus(g));
    }
    p.probed = true;
    p.merged_plus = detail::all_connected(plus, probe_budget, mr.budget_hits);
    p.merged_minus = detail::all_connected(minus, probe_budget, mr.budget_hits);
  }
  for (auto& [key, p] : points) mr.points.push_back(std::move(p));
  std::sort(mr.points.begin(), mr.points.end(), [](const RangePoint& a, const RangePoint& b) { return a.tb != b.tb ? a.tb > b.tb : a.r < b.r; });
  auto arrow_order = [](const RangeArrow& a) { return std::make_tuple(-a.from.first, a.from.second, !a.positive); };
  std::sort(mr.arrows.begin(), mr.arrows.end(), [&](const RangeArrow& a, const RangeArrow& b) { return arrow_order(a) < arrow_order(b); });
  return mr;
}

}  // namespace gridatlas
