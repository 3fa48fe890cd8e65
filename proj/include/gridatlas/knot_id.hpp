#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gridatlas/error.hpp"
#include "gridatlas/grid.hpp"
#include "gridatlas/laurent.hpp"

namespace gridatlas {

// ---------------------------------------------------------------------------
// Planar diagram code

/// One crossing as X[a,b,c,d]: a is the incoming under-edge, the rest follow
/// counterclockwise. Edges are numbered per passage through a crossing.
struct PDCrossing {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;
  int sign = 0;
};

struct PDCode {
  std::vector<PDCrossing> crossings;
  int edge_count = 0;
  /// Components that pass through no crossing at all.
  int free_loops = 0;
};

inline PDCode pd_code(const GridDiagram& g) {
  const int n = g.size();
  struct Passage {
    int crossing;
    bool over;
  };
  struct Slot {
    int under_in = -1, under_out = -1, over_in = -1, over_out = -1;
    int h = 0, v = 0;
  };
  std::vector<Crossing> xs = crossings(g);
  std::map<std::pair<int, int>, int> index;
  for (std::size_t i = 0; i < xs.size(); ++i) index[{xs[i].column, xs[i].row}] = static_cast<int>(i);
  std::vector<Slot> slots(xs.size());

  auto spans_v = [&](int col, int row) {
    return std::min(g.x_row(col), g.o_row(col)) < row && row < std::max(g.x_row(col), g.o_row(col));
  };
  auto spans_h = [&](int row, int col) {
    return std::min(g.x_col(row), g.o_col(row)) < col && col < std::max(g.x_col(row), g.o_col(row));
  };

  PDCode pd;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<Passage> passages;
    int c = start;
    do {
      seen[static_cast<std::size_t>(c)] = true;
      int r = g.o_row(c);
      int cx = g.x_col(r);
      int h = cx > c ? 1 : -1;
      for (int cc = c + h; cc != cx; cc += h) {
        if (spans_v(cc, r)) {
          int id = index.at({cc, r});
          slots[static_cast<std::size_t>(id)].h = h;
          passages.push_back({id, false});
        }
      }
      int ro = g.o_row(cx);
      int v = ro > r ? 1 : -1;
      for (int rr = r + v; rr != ro; rr += v) {
        if (spans_h(rr, cx)) {
          int id = index.at({cx, rr});
          slots[static_cast<std::size_t>(id)].v = v;
          passages.push_back({id, true});
        }
      }
      c = cx;
    } while (c != start);
    if (passages.empty()) {
      ++pd.free_loops;
      continue;
    }
    const int base = pd.edge_count;
    const int m = static_cast<int>(passages.size());
    for (int i = 0; i < m; ++i) {
      int in = base + (i + m - 1) % m;
      int out = base + i;
      Slot& s = slots[static_cast<std::size_t>(passages[static_cast<std::size_t>(i)].crossing)];
      if (passages[static_cast<std::size_t>(i)].over) {
        s.over_in = in;
        s.over_out = out;
      } else {
        s.under_in = in;
        s.under_out = out;
      }
    }
    pd.edge_count += m;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Slot& s = slots[i];
    PDCrossing x;
    x.sign = xs[i].sign;
    x.a = s.under_in;
    x.c = s.under_out;
    if (s.h == s.v) {
      x.b = s.over_in;
      x.d = s.over_out;
    } else {
      x.b = s.over_out;
      x.d = s.over_in;
    }
    pd.crossings.push_back(x);
  }
  return pd;
}

// ---------------------------------------------------------------------------
// Kauffman bracket

struct BracketOptions {
  /// Crossing count above which TooManyCrossings is raised.
  int max_crossings = 24;
  /// Up to this many crossings the plain 2^k state sum is used.
  int state_sum_limit = 12;
};

/// The loop value -A^2 - A^-2.
inline LaurentPolynomial loop_value() { return LaurentPolynomial::from_terms({{2, -1}, {-2, -1}}); }

namespace detail {

inline LaurentPolynomial loop_power(int k) {
  LaurentPolynomial p(1);
  for (int i = 0; i < k; ++i) p *= loop_value();
  return p;
}

/// Unnormalized sum over all states of A^(#A - #B) d^loops.
inline LaurentPolynomial bracket_state_sum(const PDCode& pd) {
  const std::size_t k = pd.crossings.size();
  std::vector<LaurentPolynomial> powers;
  std::map<std::pair<int, int>, std::int64_t> tally;  // (a_minus_b, loops) -> count
  std::vector<int> parent(static_cast<std::size_t>(pd.edge_count));
  auto find = [&](int e) {
    while (parent[static_cast<std::size_t>(e)] != e) {
      parent[static_cast<std::size_t>(e)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(e)])];
      e = parent[static_cast<std::size_t>(e)];
    }
    return e;
  };
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << k); ++state) {
    std::iota(parent.begin(), parent.end(), 0);
    int loops = pd.edge_count;
    auto join = [&](int p, int q) {
      int rp = find(p);
      int rq = find(q);
      if (rp != rq) {
        parent[static_cast<std::size_t>(rp)] = rq;
        --loops;
      }
    };
    int exponent = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const PDCrossing& x = pd.crossings[i];
      if ((state >> i) & 1U) {
        join(x.a, x.d);
        join(x.b, x.c);
        --exponent;
      } else {
        join(x.a, x.b);
        join(x.c, x.d);
        ++exponent;
      }
    }
    ++tally[{exponent, loops}];
  }
  LaurentPolynomial total;
  for (auto [key, count] : tally) total += LaurentPolynomial::monomial(count, key.first) * loop_power(key.second);
  return total;
}

/// Same sum as bracket_state_sum, computed crossing by crossing while keeping
/// only how the open edges are paired up, which keeps the state space small.
inline LaurentPolynomial bracket_frontier(const PDCode& pd) {
  const std::size_t k = pd.crossings.size();
  // Greedy order: next crossing shares the most edges with those already placed.
  std::vector<int> seen_count(static_cast<std::size_t>(pd.edge_count), 0);
  std::vector<bool> placed(k, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = k;
    int best_score = -1;
    for (std::size_t i = 0; i < k; ++i) {
      if (placed[i]) continue;
      const PDCrossing& x = pd.crossings[i];
      int score = 0;
      for (int e : {x.a, x.b, x.c, x.d}) score += seen_count[static_cast<std::size_t>(e)] > 0 ? 1 : 0;
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    placed[best] = true;
    order.push_back(best);
    const PDCrossing& x = pd.crossings[best];
    for (int e : {x.a, x.b, x.c, x.d}) ++seen_count[static_cast<std::size_t>(e)];
  }

  // A state maps each open path end (an edge with exactly one processed end) to the other end of its path.
  using Pairing = std::vector<std::pair<int, int>>;
  std::map<Pairing, std::map<int, LaurentPolynomial>> states;  // pairing -> loops -> A-polynomial
  states[{}][0] = LaurentPolynomial(1);

  for (std::size_t idx : order) {
    const PDCrossing& x = pd.crossings[idx];
    std::map<Pairing, std::map<int, LaurentPolynomial>> next;
    for (const auto& [pairing, by_loops] : states) {
      for (int smoothing = 0; smoothing < 2; ++smoothing) {
        std::map<int, int> partner;
        for (auto [p, q] : pairing) {
          partner[p] = q;
          partner[q] = p;
        }
        int closed = 0;
        auto join = [&](int p, int q) {
          if (p == q) {
            // Both ends of one edge meet here.
            if (partner.count(p)) throw std::logic_error("bracket: edge with three ends");
            ++closed;
            return;
          }
          auto ip = partner.find(p);
          auto iq = partner.find(q);
          if (ip != partner.end() && ip->second == q) {
            partner.erase(p);
            partner.erase(q);
            ++closed;
            return;
          }
          int end_p = p;
          int end_q = q;
          if (ip != partner.end()) {
            end_p = ip->second;
            partner.erase(ip);
          }
          iq = partner.find(q);
          if (iq != partner.end()) {
            end_q = iq->second;
            partner.erase(iq);
          }
          partner[end_p] = end_q;
          partner[end_q] = end_p;
        };
        if (smoothing == 0) {
          join(x.a, x.b);
          join(x.c, x.d);
        } else {
          join(x.a, x.d);
          join(x.b, x.c);
        }
        Pairing key;
        for (auto [p, q] : partner)
          if (p < q) key.emplace_back(p, q);
        auto& bucket = next[key];
        int shift = smoothing == 0 ? 1 : -1;
        for (const auto& [loops, poly] : by_loops) bucket[loops + closed] += poly.shifted(shift);
      }
    }
    states = std::move(next);
  }
  LaurentPolynomial total;
  for (const auto& [pairing, by_loops] : states) {
    if (!pairing.empty()) throw std::logic_error("bracket: open edges left after all crossings");
    for (const auto& [loops, poly] : by_loops) total += poly * loop_power(loops);
  }
  return total;
}

}  // namespace detail

inline LaurentPolynomial kauffman_bracket(const PDCode& pd, const BracketOptions& options = {}) {
  const int k = static_cast<int>(pd.crossings.size());
  if (k > options.max_crossings)
    throw Error(ErrorCode::TooManyCrossings,
                std::to_string(k) + " crossings exceed the ceiling of " + std::to_string(options.max_crossings));
  LaurentPolynomial sum = k <= options.state_sum_limit ? detail::bracket_state_sum(pd) : detail::bracket_frontier(pd);
  if (k == 0) sum = LaurentPolynomial(1);
  sum *= detail::loop_power(pd.free_loops);
  // Normalize so that a single round loop has bracket 1.
  return sum.divided_exactly_by(loop_value());
}

inline LaurentPolynomial kauffman_bracket(const GridDiagram& g, const BracketOptions& options = {}) {
  return kauffman_bracket(pd_code(g), options);
}

/// Jones polynomial in t = A^-4. Links whose polynomial needs half-integral powers are rejected.
inline LaurentPolynomial jones(const GridDiagram& g, const BracketOptions& options = {}) {
  LaurentPolynomial bracket = kauffman_bracket(g, options);
  int w = writhe(g);
  LaurentPolynomial normalized = bracket.shifted(-3 * w) * LaurentPolynomial(w % 2 == 0 ? 1 : -1);
  LaurentPolynomial v;
  for (auto [e, c] : normalized.terms()) {
    if (e % 4 != 0)
      throw Error(ErrorCode::HalfIntegralJones, "Jones polynomial needs half-integral powers of t (even component count)");
    v += LaurentPolynomial::monomial(c, -e / 4);
  }
  return v;
}

inline std::int64_t determinant(const LaurentPolynomial& jones_polynomial) {
  return std::llabs(jones_polynomial.evaluate(-1));
}

inline std::int64_t determinant(const GridDiagram& g, const BracketOptions& options = {}) {
  if (components(g) != 1) throw Error(ErrorCode::MultiComponent, "determinant is defined here for knots only");
  return determinant(jones(g, options));
}

/// Jones polynomial of the topological mirror: t -> 1/t.
inline LaurentPolynomial mirror_jones(const LaurentPolynomial& v) { return v.inverted(); }

// ---------------------------------------------------------------------------
// Braids

/// Word in the braid group on `strands` strands; letter i means sigma_i, -i its inverse.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  int writhe() const {
    int w = 0;
    for (int l : letters) w += l > 0 ? 1 : -1;
    return w;
  }
};

inline void validate_braid(const BraidWord& b) {
  if (b.strands < 1) throw Error(ErrorCode::InvalidLetter, "a braid needs at least one strand");
  for (int l : b.letters) {
    if (l == 0 || std::abs(l) > b.strands - 1)
      throw Error(ErrorCode::InvalidLetter,
                  "letter " + std::to_string(l) + " outside 1.." + std::to_string(b.strands - 1) + " in absolute value");
  }
}

/// Mirror image: every crossing reversed.
inline BraidWord mirror(const BraidWord& b) {
  BraidWord m = b;
  for (int& l : m.letters) l = -l;
  return m;
}

/// Parses "3: 1 1 -2" or "1 1 -2" (strand count then inferred from the largest letter).
inline BraidWord parse_braid(const std::string& text) {
  BraidWord b;
  std::string body = text;
  auto colon = text.find(':');
  bool explicit_strands = colon != std::string::npos;
  if (explicit_strands) {
    std::vector<int> head = detail::parse_int_list(text.substr(0, colon), text);
    if (head.size() != 1) throw Error(ErrorCode::Parse, "expected a single strand count before ':'");
    b.strands = head[0];
    body = text.substr(colon + 1);
  }
  b.letters = detail::parse_int_list(body, text);
  if (!explicit_strands) {
    int top = 0;
    for (int l : b.letters) top = std::max(top, std::abs(l));
    b.strands = top + 1;
  }
  validate_braid(b);
  return b;
}

/// Grid of the braid closure. The braid is laid out left to right in the middle
/// of the grid, positions counted from the bottom; each letter uses two columns,
/// one per strand changing height. Closing arcs go up on the right, across the
/// top and down on the left, nested so they never cross. The strands are then
/// oriented right to left, which makes the positive transverse pushoff the
/// transverse braid closure: sl = writhe - strands. Size 2(strands + letters).
inline GridDiagram braid_to_grid(const BraidWord& b) {
  validate_braid(b);
  const int k = b.strands;
  const int m = static_cast<int>(b.letters.size());
  if (2 * (k + m) > kMaxGridSize) throw Error(ErrorCode::SizeMismatch, "braid too long for a grid");

  // Rows are kept as an ordered list of ids so that new rows can be slotted in anywhere.
  std::vector<int> row_order;
  int next_row = 0;
  auto insert_above = [&](int row_id) {
    int id = next_row++;
    auto it = std::find(row_order.begin(), row_order.end(), row_id);
    row_order.insert(it + 1, id);
    return id;
  };

  struct Vertex {
    int col;
    int row;
  };
  // Per position at the left end: its starting row. Per strand piece we log the
  // vertical moves it makes; tracing happens once the whole braid is laid out.
  std::vector<int> start_row(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    start_row[static_cast<std::size_t>(p)] = next_row;
    row_order.push_back(next_row++);
  }
  // strand id = starting position; moves[strand] = list of (column, new row).
  std::vector<std::vector<Vertex>> moves(static_cast<std::size_t>(k));
  std::vector<int> at(static_cast<std::size_t>(k));       // position -> strand
  std::vector<int> row_of(static_cast<std::size_t>(k));   // strand -> current row
  for (int p = 0; p < k; ++p) {
    at[static_cast<std::size_t>(p)] = p;
    row_of[static_cast<std::size_t>(p)] = start_row[static_cast<std::size_t>(p)];
  }
  int col = k;  // columns 0..k-1 are the left closing columns
  for (int letter : b.letters) {
    int i = std::abs(letter) - 1;
    int sa = at[static_cast<std::size_t>(i)];      // rises from position i
    int sb = at[static_cast<std::size_t>(i + 1)];  // drops from position i+1
    int a = row_of[static_cast<std::size_t>(sa)];
    int bb = row_of[static_cast<std::size_t>(sb)];
    int a_new = 0;
    int b_new = 0;
    if (letter > 0) {
      // Falling strand over: rows a < b_new < a_new < b, crossing on the falling strand's column.
      b_new = insert_above(a);
      a_new = insert_above(b_new);
    } else {
      // Rising strand over: rows a < b_new < b < a_new, crossing on the rising strand's column.
      b_new = insert_above(a);
      a_new = insert_above(bb);
    }
    moves[static_cast<std::size_t>(sa)].push_back({col, a_new});
    moves[static_cast<std::size_t>(sb)].push_back({col + 1, b_new});
    col += 2;
    row_of[static_cast<std::size_t>(sa)] = a_new;
    row_of[static_cast<std::size_t>(sb)] = b_new;
    at[static_cast<std::size_t>(i)] = sb;
    at[static_cast<std::size_t>(i + 1)] = sa;
  }
  const int n = 2 * (k + m);
  // Closing columns and rows: position p uses left column p (outermost for p = 0),
  // right column n-1-p, and the p-th row from the top.
  std::vector<int> top_row(static_cast<std::size_t>(k));
  for (int p = k - 1; p >= 0; --p) {
    top_row[static_cast<std::size_t>(p)] = next_row;
    row_order.push_back(next_row++);
  }
  std::vector<int> rank(static_cast<std::size_t>(next_row));
  for (std::size_t i = 0; i < row_order.size(); ++i) rank[static_cast<std::size_t>(row_order[i])] = static_cast<int>(i);

  std::vector<int> x(static_cast<std::size_t>(n), -1);
  std::vector<int> o(static_cast<std::size_t>(n), -1);
  // Traced left to right, corners turning from horizontal to vertical get x, the others o.
  for (int s = 0; s < k; ++s) {
    int left = s;
    int row = start_row[static_cast<std::size_t>(s)];
    x[static_cast<std::size_t>(left)] = rank[static_cast<std::size_t>(top_row[static_cast<std::size_t>(s)])];
    o[static_cast<std::size_t>(left)] = rank[static_cast<std::size_t>(row)];
    for (const Vertex& v : moves[static_cast<std::size_t>(s)]) {
      x[static_cast<std::size_t>(v.col)] = rank[static_cast<std::size_t>(row)];
      o[static_cast<std::size_t>(v.col)] = rank[static_cast<std::size_t>(v.row)];
      row = v.row;
    }
  }
  for (int p = 0; p < k; ++p) {
    int s = at[static_cast<std::size_t>(p)];
    int right = n - 1 - p;
    x[static_cast<std::size_t>(right)] = rank[static_cast<std::size_t>(row_of[static_cast<std::size_t>(s)])];
    o[static_cast<std::size_t>(right)] = rank[static_cast<std::size_t>(top_row[static_cast<std::size_t>(p)])];
  }
  return validate(o, x);
}

// ---------------------------------------------------------------------------
// Identification

struct KnotId {
  std::string name = "Unknown";
  bool ambiguous = false;

  bool known() const { return name != "Unknown"; }
  friend bool operator==(const KnotId&, const KnotId&) = default;
};

struct KnotTableEntry {
  std::string name;
  LaurentPolynomial jones;
  std::int64_t determinant = 0;
};

class KnotTable {
 public:
  KnotTable() = default;
  explicit KnotTable(std::vector<KnotTableEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<KnotTableEntry>& entries() const { return entries_; }

  KnotId lookup(const LaurentPolynomial& v, std::int64_t det) const {
    KnotId id;
    int hits = 0;
    for (const auto& e : entries_) {
      if (e.determinant == det && e.jones == v) {
        if (hits == 0) id.name = e.name;
        ++hits;
      }
    }
    id.ambiguous = hits > 1;
    return id;
  }

  /// Rows `name<TAB>e:c e:c ...<TAB>determinant`.
  void write_tsv(std::ostream& out) const {
    for (const auto& e : entries_) out << e.name << '\t' << e.jones.to_pairs() << '\t' << e.determinant << '\n';
  }

  static KnotTable read_tsv(std::istream& in) {
    std::vector<KnotTableEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto t1 = line.find('\t');
      auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
      if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
        throw Error(ErrorCode::Parse, "knot table line " + std::to_string(line_no) + " needs exactly 3 tab-separated fields");
      KnotTableEntry e;
      e.name = line.substr(0, t1);
      try {
        e.jones = LaurentPolynomial::from_pairs(line.substr(t1 + 1, t2 - t1 - 1));
        std::size_t used = 0;
        std::string det = line.substr(t2 + 1);
        e.determinant = std::stoll(det, &used);
        if (used != det.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception& ex) {
        throw Error(ErrorCode::Parse, "knot table line " + std::to_string(line_no) + ": " + ex.what());
      }
      entries.push_back(std::move(e));
    }
    return KnotTable(std::move(entries));
  }

 private:
  std::vector<KnotTableEntry> entries_;
};

/// Reference braids for prime knots through seven crossings. Each word closes
/// to the knot under the name given here (the chirality used by the atlas);
/// the mirror entry is generated by reversing every crossing.
struct ReferenceBraid {
  const char* name;
  int strands;
  std::vector<int> letters;
};

inline const std::vector<ReferenceBraid>& reference_braids() {
  static const std::vector<ReferenceBraid> braids = {
      {"3_1", 2, {-1, -1, -1}},
      {"4_1", 3, {1, -2, 1, -2}},
      {"5_1", 2, {-1, -1, -1, -1, -1}},
      {"5_2", 3, {-1, -1, -1, -2, 1, -2}},
      {"6_1", 4, {-1, -1, -2, 1, 3, -2, 3}},
      {"6_2", 3, {-1, -1, -1, 2, -1, 2}},
      {"6_3", 3, {1, 1, -2, 1, -2, -2}},
      {"7_1", 2, {-1, -1, -1, -1, -1, -1, -1}},
      {"7_2", 4, {-1, -1, -1, -2, 1, -2, -3, 2, -3}},
      {"7_3", 3, {1, 1, 1, 1, 1, 2, -1, 2}},
      {"7_4", 4, {1, 1, 2, -1, 2, 2, 3, -2, 3}},
      {"7_5", 3, {-1, -1, -1, -1, -2, 1, -2, -2}},
      {"7_6", 4, {-1, -1, 2, -1, -3, 2, -3}},
      {"7_7", 4, {1, -2, 1, -2, 3, -2, 3}},
  };
  return braids;
}

/// Table built from the reference braids: unknot, each knot, and each chiral mirror.
inline KnotTable build_knot_table() {
  BracketOptions generous;
  generous.max_crossings = 64;
  std::vector<KnotTableEntry> entries;
  entries.push_back({"unknot", LaurentPolynomial(1), 1});
  for (const auto& rb : reference_braids()) {
    BraidWord b{rb.strands, rb.letters};
    LaurentPolynomial v = jones(braid_to_grid(b), generous);
    entries.push_back({rb.name, v, determinant(v)});
    LaurentPolynomial vm = mirror_jones(v);
    if (vm != v) entries.push_back({std::string("m(") + rb.name + ")", vm, determinant(vm)});
  }
  return KnotTable(std::move(entries));
}

inline const KnotTable& builtin_knot_table() {
  static const KnotTable table = build_knot_table();
  return table;
}

inline KnotId identify(const LaurentPolynomial& v, std::int64_t det, const KnotTable& table = builtin_knot_table()) {
  return table.lookup(v, det);
}

/// Names a knot diagram by its Jones polynomial and determinant.
inline KnotId identify(const GridDiagram& g, const KnotTable& table = builtin_knot_table()) {
  if (components(g) != 1) return KnotId{};
  BracketOptions generous;
  generous.max_crossings = 96;
  LaurentPolynomial v = jones(g, generous);
  return table.lookup(v, determinant(v));
}

}  // namespace gridatlas
