#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gridatlas/error.hpp"
#include "gridatlas/grid.hpp"
#include "gridatlas/knot_id.hpp"
#include "gridatlas/moves.hpp"

namespace gridatlas {

struct SearchBudget {
  int max_size = 7;
  std::size_t max_visited = 200000;
  std::int64_t max_millis = 60000;
};

// ---------------------------------------------------------------------------
// Enumeration

struct PruneFlags {
  /// Skip diagrams that already contain a destabilizable 2x2 block.
  bool skip_destabilizable = false;
};

/// Calls `emit` once per oriented canonical key of every knot diagram of size n.
/// Backtracks column by column with x_row[0] = 0 (every canonical form has it)
/// and cuts branches as soon as a cycle closes before using all n columns.
inline void enumerate(int n, const PruneFlags& prune, const std::function<void(const GridDiagram&)>& emit) {
  if (n < 2 || n > kMaxGridSize) throw Error(ErrorCode::SizeMismatch, "enumerate needs 2 <= n <= 255");
  std::vector<int> x(static_cast<std::size_t>(n), -1);
  std::vector<int> o(static_cast<std::size_t>(n), -1);
  std::vector<int> x_col(static_cast<std::size_t>(n), -1);
  std::vector<int> o_col(static_cast<std::size_t>(n), -1);

  // Cycle map: column c -> column of the X in the row of c's O.
  auto next = [&](int c) -> int {
    int r = o[static_cast<std::size_t>(c)];
    return r < 0 ? -1 : x_col[static_cast<std::size_t>(r)];
  };
  auto closes_short_cycle = [&](int c) {
    int steps = 0;
    int cur = c;
    do {
      cur = next(cur);
      ++steps;
      if (cur < 0) return false;
    } while (cur != c);
    return steps < n;
  };

  std::function<void(int)> place = [&](int c) {
    if (c == n) {
      auto g = validate(x, o);
      if (!is_canonical(g)) return;
      if (prune.skip_destabilizable && !destabilizations(g, EquivalenceMode::topological).empty()) return;
      emit(g);
      return;
    }
    for (int xr = 0; xr < n; ++xr) {
      if (x_col[static_cast<std::size_t>(xr)] >= 0) continue;
      if (c == 0 && xr != 0) break;
      x[static_cast<std::size_t>(c)] = xr;
      x_col[static_cast<std::size_t>(xr)] = c;
      for (int orow = 0; orow < n; ++orow) {
        if (orow == xr || o_col[static_cast<std::size_t>(orow)] >= 0) continue;
        o[static_cast<std::size_t>(c)] = orow;
        o_col[static_cast<std::size_t>(orow)] = c;
        // Both new cycle-map edges pass through c.
        if (!closes_short_cycle(c)) place(c + 1);
        o[static_cast<std::size_t>(c)] = -1;
        o_col[static_cast<std::size_t>(orow)] = -1;
      }
      x[static_cast<std::size_t>(c)] = -1;
      x_col[static_cast<std::size_t>(xr)] = -1;
    }
  };
  place(0);
}

inline std::vector<GridDiagram> enumerate(int n, const PruneFlags& prune = {}) {
  std::vector<GridDiagram> out;
  enumerate(n, prune, [&](const GridDiagram& g) { out.push_back(g); });
  return out;
}

// ---------------------------------------------------------------------------
// Connectivity

struct SearchStats {
  std::size_t visited_forward = 0;
  std::size_t visited_backward = 0;
  std::size_t frontier_forward = 0;
  std::size_t frontier_backward = 0;
  /// Which ceiling stopped the search: "", "max_visited" or "max_millis".
  std::string stopped_by;
};

/// Outcome of a connectivity search. Exhausted never means "not isotopic".
struct IsotopyVerdict {
  bool connected = false;
  MovePath path;
  SearchStats stats;
};

namespace detail {

using KeyParents = std::unordered_map<CanonicalKey, CanonicalKey, CanonicalKeyHash>;

class Deadline {
 public:
  explicit Deadline(std::int64_t millis)
      : end_(millis <= 0 ? std::chrono::steady_clock::time_point::max()
                         : std::chrono::steady_clock::now() + std::chrono::milliseconds(millis)) {}
  bool passed() const { return std::chrono::steady_clock::now() > end_; }

 private:
  std::chrono::steady_clock::time_point end_;
};

/// Moves from canonical(from) to some diagram whose key is `to`, found among the neighbors.
inline MovePath step_between(const GridDiagram& canonical_from, const CanonicalKey& to, EquivalenceMode mode, int max_size) {
  for (auto& nb : neighbors(canonical_from, mode, max_size)) {
    if (canonical_key(nb.result) == to) return nb.moves;
  }
  throw std::logic_error("search: parent link without a matching move");
}

/// Turns a chain of canonical keys into an exact move path from a to b.
inline MovePath assemble_path(const GridDiagram& a, const GridDiagram& b, const std::vector<CanonicalKey>& chain,
                              EquivalenceMode mode, int max_size) {
  MovePath path = moves_to_canonical(a);
  GridDiagram cur = replay(a, path);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    MovePath step = step_between(cur, chain[i + 1], mode, std::max(max_size, cur.size() + 1));
    cur = replay(cur, step);
    path.insert(path.end(), step.begin(), step.end());
    MovePath settle = moves_to_canonical(cur);
    cur = replay(cur, settle);
    path.insert(path.end(), settle.begin(), settle.end());
  }
  // cur is canonical(b); walk back to b itself.
  auto choice = canonical_choice(b, KeyMode::oriented);
  const int n = b.size();
  MovePath back = translation_moves(choice.dc - n, b.x_row(choice.dc) - n, n);
  cur = replay(cur, back);
  path.insert(path.end(), back.begin(), back.end());
  if (cur != b) throw std::logic_error("search: reconstructed path does not reach the target");
  return path;
}

}  // namespace detail

/// Checks the invariants that must agree for a and b to be equivalent in `mode`.
inline void require_matching_invariants(const GridDiagram& a, const GridDiagram& b, EquivalenceMode mode) {
  if (components(a) != components(b)) throw Error(ErrorCode::InvariantMismatch, "component counts differ");
  if (components(a) == 1) {
    auto ia = classical_invariants(a);
    auto ib = classical_invariants(b);
    if (mode == EquivalenceMode::legendrian && (ia.tb != ib.tb || ia.r != ib.r))
      throw Error(ErrorCode::InvariantMismatch, "(tb,r) differ: (" + std::to_string(ia.tb) + "," + std::to_string(ia.r) +
                                                    ") vs (" + std::to_string(ib.tb) + "," + std::to_string(ib.r) + ")");
    if (mode == EquivalenceMode::transverse && ia.sl != ib.sl)
      throw Error(ErrorCode::InvariantMismatch, "sl differ: " + std::to_string(ia.sl) + " vs " + std::to_string(ib.sl));
  }
  BracketOptions generous;
  generous.max_crossings = 128;
  if (components(a) % 2 == 1 && jones(a, generous) != jones(b, generous))
    throw Error(ErrorCode::InvariantMismatch, "Jones polynomials differ");
}

/// Bidirectional breadth-first search between a and b in the move graph of `mode`
/// restricted to diagrams of size at most budget.max_size.
inline IsotopyVerdict connect(const GridDiagram& a, const GridDiagram& b, EquivalenceMode mode, const SearchBudget& budget) {
  require_matching_invariants(a, b, mode);
  IsotopyVerdict verdict;
  const CanonicalKey ka = canonical_key(a);
  const CanonicalKey kb = canonical_key(b);
  const int max_size = std::max({budget.max_size, a.size(), b.size()});
  if (ka == kb) {
    verdict.connected = true;
    verdict.path = detail::assemble_path(a, b, {ka}, mode, max_size);
    verdict.stats.visited_forward = verdict.stats.visited_backward = 1;
    return verdict;
  }
  detail::Deadline deadline(budget.max_millis);
  detail::KeyParents parents[2];
  std::vector<CanonicalKey> frontier[2];
  parents[0].emplace(ka, CanonicalKey());
  parents[1].emplace(kb, CanonicalKey());
  frontier[0].push_back(ka);
  frontier[1].push_back(kb);
  std::optional<CanonicalKey> meet;

  auto fill_stats = [&] {
    verdict.stats.visited_forward = parents[0].size();
    verdict.stats.visited_backward = parents[1].size();
    verdict.stats.frontier_forward = frontier[0].size();
    verdict.stats.frontier_backward = frontier[1].size();
  };

  while (!meet && !frontier[0].empty() && !frontier[1].empty()) {
    int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<CanonicalKey> next_frontier;
    for (const auto& key : frontier[side]) {
      if (deadline.passed()) {
        verdict.stats.stopped_by = "max_millis";
        break;
      }
      GridDiagram g = diagram_from_key(key);
      for (auto& nb : neighbors(g, mode, max_size)) {
        CanonicalKey k2 = canonical_key(nb.result);
        if (!parents[side].emplace(k2, key).second) continue;
        if (parents[1 - side].count(k2)) {
          meet = k2;
          break;
        }
        next_frontier.push_back(std::move(k2));
        if (parents[0].size() + parents[1].size() >= budget.max_visited) {
          verdict.stats.stopped_by = "max_visited";
          break;
        }
      }
      if (meet || !verdict.stats.stopped_by.empty()) break;
    }
    frontier[side] = std::move(next_frontier);
    if (!verdict.stats.stopped_by.empty()) break;
  }
  fill_stats();
  if (!meet) return verdict;

  std::vector<CanonicalKey> chain;
  for (CanonicalKey k = *meet; !k.bytes().empty(); k = parents[0].at(k)) chain.push_back(k);
  std::reverse(chain.begin(), chain.end());
  for (CanonicalKey k = parents[1].at(*meet); !k.bytes().empty(); k = parents[1].at(k)) chain.push_back(k);
  verdict.connected = true;
  verdict.stats.stopped_by.clear();
  verdict.path = detail::assemble_path(a, b, chain, mode, max_size);
  return verdict;
}

// ---------------------------------------------------------------------------
// Clustering

struct DiagramClass {
  GridDiagram representative;
  ClassicalInvariants invariants;
  KnotId knot;
  /// Grid size of the smallest member.
  int size = 0;
  std::vector<CanonicalKey> members;
};

/// Conjectural isotopy classes: members of a class are connected by explicit searches,
/// distinct classes merely failed to connect within the budget.
struct ClassTable {
  std::vector<DiagramClass> classes;
  std::map<CanonicalKey, int> class_of;
  /// Number of floods or pairwise searches that stopped on a budget ceiling.
  int budget_hits = 0;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

/// Breadth-first flood from `start` within max_size; reports every indexed key reached.
/// Returns false when a ceiling stopped the flood early.
inline bool flood(const CanonicalKey& start, EquivalenceMode mode, int max_size, std::size_t max_visited,
                  const Deadline& deadline, const std::function<void(const CanonicalKey&)>& on_visit) {
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen{start};
  std::vector<CanonicalKey> frontier{start};
  on_visit(start);
  while (!frontier.empty()) {
    std::vector<CanonicalKey> next;
    for (const auto& key : frontier) {
      if (deadline.passed()) return false;
      for (auto& nb : neighbors(diagram_from_key(key), mode, max_size)) {
        CanonicalKey k2 = canonical_key(nb.result);
        if (!seen.insert(k2).second) continue;
        on_visit(k2);
        if (seen.size() >= max_visited) return false;
        next.push_back(std::move(k2));
      }
    }
    frontier = std::move(next);
  }
  return true;
}

}  // namespace detail

/// Groups diagrams into classes. Floods from each provisional class at growing
/// size ceilings (smallest input size up to budget.max_size), uniting every
/// input reached; leftover pairs of classes then get a bidirectional search each.
/// Every flood and search shares the budget's node ceiling and deadline.
inline ClassTable cluster(const std::vector<GridDiagram>& diagrams, EquivalenceMode mode, const SearchBudget& budget) {
  ClassTable table;
  std::map<CanonicalKey, GridDiagram> unique;
  for (const auto& g : diagrams) unique.emplace(canonical_key(g), canonical_form(g));
  std::vector<CanonicalKey> keys;
  std::vector<GridDiagram> reps;
  std::map<CanonicalKey, int> index;
  for (auto& [k, g] : unique) {
    index[k] = static_cast<int>(keys.size());
    keys.push_back(k);
    reps.push_back(g);
  }
  const std::size_t count = keys.size();
  detail::UnionFind uf(count);
  detail::Deadline deadline(budget.max_millis);

  int smallest = std::numeric_limits<int>::max();
  for (const auto& g : reps) smallest = std::min(smallest, g.size());
  for (int level = smallest; level <= budget.max_size && count > 1; ++level) {
    std::unordered_set<int> flooded_roots;
    for (std::size_t i = 0; i < count; ++i) {
      int root = uf.find(static_cast<int>(i));
      if (flooded_roots.count(root) || reps[i].size() > level) continue;
      flooded_roots.insert(root);
      bool complete = detail::flood(keys[i], mode, level, budget.max_visited, deadline, [&](const CanonicalKey& k) {
        auto it = index.find(k);
        if (it != index.end()) uf.unite(static_cast<int>(i), it->second);
      });
      if (!complete) ++table.budget_hits;
    }
    std::set<int> roots;
    for (std::size_t i = 0; i < count; ++i) roots.insert(uf.find(static_cast<int>(i)));
    if (roots.size() == 1) break;
  }

  // Pairwise bidirectional searches between the remaining classes.
  std::vector<int> roots;
  for (std::size_t i = 0; i < count; ++i)
    if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) roots.push_back(static_cast<int>(i));
  for (std::size_t p = 0; p < roots.size(); ++p) {
    for (std::size_t q = p + 1; q < roots.size(); ++q) {
      int a = uf.find(roots[p]);
      int b = uf.find(roots[q]);
      if (a == b) continue;
      IsotopyVerdict v;
      try {
        v = connect(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)], mode, budget);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvariantMismatch) throw;
        continue;
      }
      if (v.connected) uf.unite(a, b);
      else if (!v.stats.stopped_by.empty()) ++table.budget_hits;
    }
  }

  std::map<int, int> class_index;
  for (std::size_t i = 0; i < count; ++i) {
    int root = uf.find(static_cast<int>(i));
    auto [it, fresh] = class_index.emplace(root, static_cast<int>(table.classes.size()));
    if (fresh) {
      DiagramClass c{reps[i], {}, {}, reps[i].size(), {}};
      table.classes.push_back(std::move(c));
    }
    DiagramClass& c = table.classes[static_cast<std::size_t>(it->second)];
    c.members.push_back(keys[i]);
    // Keys are visited in increasing order, so the first smallest diagram wins.
    if (reps[i].size() < c.size) {
      c.size = reps[i].size();
      c.representative = reps[i];
    }
    table.class_of[keys[i]] = it->second;
  }
  for (auto& c : table.classes) {
    if (components(c.representative) == 1) {
      c.invariants = classical_invariants(c.representative);
      c.knot = identify(c.representative);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Stuck diagrams

namespace detail {

/// True when some 2x2 block with two O's and one X can be collapsed.
inline bool has_o_destabilization(const GridDiagram& g) { return !destabilizations(reverse(g), EquivalenceMode::topological).empty(); }

inline bool destabilizable(const GridDiagram& g) {
  return !destabilizations(g, EquivalenceMode::topological).empty() || has_o_destabilization(g);
}

}  // namespace detail

/// Size-n knot diagrams whose knot type has a smaller diagram but whose whole
/// commutation/translation component contains nothing destabilizable.
inline std::vector<GridDiagram> find_stuck(int n) {
  if (n < 3) throw Error(ErrorCode::SizeMismatch, "find_stuck needs n >= 3");
  // Smallest size seen per Jones polynomial among the smaller enumerations.
  std::map<std::vector<std::pair<int, std::int64_t>>, int> smallest;
  BracketOptions generous;
  generous.max_crossings = 128;
  for (int m = 2; m < n; ++m) {
    enumerate(m, {true}, [&](const GridDiagram& g) { smallest.emplace(jones(g, generous).terms(), m); });
  }
  std::vector<GridDiagram> all = enumerate(n);
  std::map<CanonicalKey, int> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[canonical_key(all[i])] = static_cast<int>(i);
  std::vector<bool> done(all.size(), false);
  std::vector<GridDiagram> stuck;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (done[i]) continue;
    // Component under commutations (translations are folded into the keys).
    std::vector<int> component{static_cast<int>(i)};
    done[i] = true;
    bool escapes = false;
    for (std::size_t head = 0; head < component.size(); ++head) {
      const GridDiagram& g = all[static_cast<std::size_t>(component[head])];
      if (detail::destabilizable(g)) escapes = true;
      for (auto& nb : neighbors(g, EquivalenceMode::topological, n)) {
        if (nb.result.size() != n) continue;
        int j = index.at(canonical_key(nb.result));
        if (done[static_cast<std::size_t>(j)]) continue;
        done[static_cast<std::size_t>(j)] = true;
        component.push_back(j);
      }
    }
    if (escapes) continue;
    auto it = smallest.find(jones(all[i], generous).terms());
    if (it == smallest.end()) continue;  // nothing smaller of this type: a minimal diagram
    for (int j : component) stuck.push_back(all[static_cast<std::size_t>(j)]);
  }
  return stuck;
}

}  // namespace gridatlas
