#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gridatlas/mountain.hpp"
#include "gridatlas/ruling.hpp"
#include "gridatlas/theta.hpp"

namespace gridatlas {

// ---------------------------------------------------------------------------
// Status taxonomy

/// PROVEN: told apart from every other class at its (tb, r) by an invariant.
/// CONJECTURED: only a search that ran out of budget separates it.
enum class Distinctness { Proven, Conjectured };

/// Whether L equals one of its symmetric images: PROVEN (explicit move path),
/// FALSE (an invariant differs), CONJECTURED (no path within budget).
enum class SymmetryStatus { Proven, False, Conjectured };

inline std::string to_string(Distinctness d) { return d == Distinctness::Proven ? "PROVEN" : "CONJECTURED"; }

inline std::string to_string(SymmetryStatus s) {
  switch (s) {
    case SymmetryStatus::Proven: return "PROVEN";
    case SymmetryStatus::False: return "FALSE";
    case SymmetryStatus::Conjectured: return "CONJECTURED";
  }
  return "?";
}

inline Distinctness parse_distinctness(const std::string& s) {
  if (s == "PROVEN") return Distinctness::Proven;
  if (s == "CONJECTURED") return Distinctness::Conjectured;
  throw Error(ErrorCode::Parse, "unknown distinctness status '" + s + "'");
}

inline SymmetryStatus parse_symmetry(const std::string& s) {
  if (s == "PROVEN") return SymmetryStatus::Proven;
  if (s == "FALSE") return SymmetryStatus::False;
  if (s == "CONJECTURED") return SymmetryStatus::Conjectured;
  throw Error(ErrorCode::Parse, "unknown symmetry status '" + s + "'");
}

// ---------------------------------------------------------------------------
// Stabilization merge notation: "L_1,L_2 | -L_1" or "L_1 : L_2".
// Commas join classes that agree after one stabilization; '|' separates classes
// that stay provably distinct; ':' separates classes conjectured to stay distinct.

struct MergeCell {
  std::vector<std::vector<std::string>> groups;
  /// separators[i] sits between groups[i] and groups[i+1]: '|' or ':'.
  std::vector<char> separators;

  friend bool operator==(const MergeCell&, const MergeCell&) = default;
};

inline std::string format_merge_cell(const MergeCell& cell) {
  std::string out;
  for (std::size_t i = 0; i < cell.groups.size(); ++i) {
    if (i) out += std::string(" ") + cell.separators[i - 1] + " ";
    for (std::size_t j = 0; j < cell.groups[i].size(); ++j) out += (j ? "," : "") + cell.groups[i][j];
  }
  return out;
}

inline MergeCell parse_merge_cell(const std::string& text) {
  MergeCell cell;
  std::string current;
  auto flush_group = [&] {
    std::vector<std::string> group;
    std::string label;
    std::istringstream in(current);
    while (std::getline(in, label, ',')) {
      label = detail::trim(label);
      if (label.empty()) throw Error(ErrorCode::Parse, "empty label in merge cell '" + text + "'");
      group.push_back(label);
    }
    if (group.empty()) throw Error(ErrorCode::Parse, "empty group in merge cell '" + text + "'");
    cell.groups.push_back(std::move(group));
    current.clear();
  };
  for (char ch : text) {
    if (ch == '|' || ch == ':') {
      flush_group();
      cell.separators.push_back(ch);
    } else {
      current += ch;
    }
  }
  if (detail::trim(current).empty() && cell.groups.empty()) return cell;
  flush_group();
  return cell;
}

struct MergeEntry {
  int tb = 0;
  int r = 0;
  MergeCell plus;
  MergeCell minus;
};

// ---------------------------------------------------------------------------
// Records

struct ClassRecord {
  std::string label;
  GridDiagram representative;
  ClassicalInvariants invariants;
  std::size_t members = 0;
  /// Ungraded ruling polynomial, or the empty-set sign.
  std::string ruling;
  /// Zero-graded ruling polynomial, "-" when r != 0, or the empty-set sign.
  std::string ruling_graded;
  bool theta = false;
  SymmetryStatus reverse_equal = SymmetryStatus::Conjectured;     // L = -L
  SymmetryStatus mirror_equal = SymmetryStatus::Conjectured;      // L = mu(L)
  SymmetryStatus transverse_equal = SymmetryStatus::Conjectured;  // L = -mu(L)
  Distinctness status = Distinctness::Conjectured;
};

struct AtlasRecord {
  KnotId knot;
  int arc_index = 0;
  int max_tb = 0;
  std::vector<ClassRecord> classes;
  std::vector<MergeEntry> merge_table;
  bool nonsimple_candidate = false;
  /// Upper bound on tb + |r| taken from an external data file.
  std::optional<int> mfw_bound;
  MountainRange mountain;
  SearchBudget budget;
  int budget_hits = 0;
};

// ---------------------------------------------------------------------------
// Cache: one file per (knot, tb, r, mode), one class per line as member keys.

class ClassCache {
 public:
  explicit ClassCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::optional<ClassCache> from_env() {
    const char* dir = std::getenv("GRIDATLAS_CACHE");
    if (!dir || !*dir) return std::nullopt;
    return ClassCache(dir);
  }

  std::filesystem::path file_for(const std::string& knot, int tb, int r, EquivalenceMode mode) const {
    std::string safe;
    for (char ch : knot) safe += std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ? ch : '-';
    return dir_ / (safe + "_tb" + std::to_string(tb) + "_r" + std::to_string(r) + "_" + to_string(mode) + ".classes");
  }

  std::optional<std::vector<std::vector<CanonicalKey>>> load(const std::string& knot, int tb, int r, EquivalenceMode mode) const {
    std::ifstream in(file_for(knot, tb, r, mode));
    if (!in) return std::nullopt;
    std::vector<std::vector<CanonicalKey>> classes;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream words(line);
      std::vector<CanonicalKey> keys;
      std::string hex;
      while (words >> hex) keys.push_back(CanonicalKey::from_hex(hex));
      if (!keys.empty()) classes.push_back(std::move(keys));
    }
    return classes;
  }

  void store(const std::string& knot, int tb, int r, EquivalenceMode mode, const ClassTable& table) const {
    std::filesystem::create_directories(dir_);
    auto path = file_for(knot, tb, r, mode);
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write cache file " + path.string());
    out << "# " << knot << " tb=" << tb << " r=" << r << " mode=" << to_string(mode) << "\n";
    for (const auto& c : table.classes) {
      for (std::size_t i = 0; i < c.members.size(); ++i) out << (i ? " " : "") << c.members[i].hex();
      out << "\n";
    }
  }

 private:
  std::filesystem::path dir_;
};

/// Rebuilds a class table from cached member keys.
inline ClassTable class_table_from_keys(const std::vector<std::vector<CanonicalKey>>& groups) {
  ClassTable table;
  for (const auto& keys : groups) {
    DiagramClass c;
    c.members = keys;
    c.representative = diagram_from_key(keys.front());
    c.size = c.representative.size();
    for (const auto& k : keys) {
      GridDiagram g = diagram_from_key(k);
      if (g.size() < c.size) {
        c.size = g.size();
        c.representative = g;
      }
      table.class_of[k] = static_cast<int>(table.classes.size());
    }
    c.invariants = classical_invariants(c.representative);
    c.knot = identify(c.representative);
    table.classes.push_back(std::move(c));
  }
  return table;
}

// ---------------------------------------------------------------------------
// External bounds data file: "knot<TAB>bound" rows, meaning tb + |r| <= bound.

inline std::map<std::string, int> read_mfw_bounds(std::istream& in) {
  std::map<std::string, int> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::Parse, "bounds line " + std::to_string(line_no) + " needs a tab");
    auto values = detail::parse_int_list(line.substr(tab + 1), line);
    if (values.size() != 1) throw Error(ErrorCode::Parse, "bounds line " + std::to_string(line_no) + " needs one integer");
    out[detail::trim(line.substr(0, tab))] = values[0];
  }
  return out;
}

inline std::map<std::string, int> read_mfw_bounds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return read_mfw_bounds(in);
}

// ---------------------------------------------------------------------------
// Assembly

struct AtlasOptions {
  SearchBudget budget;
  /// Largest grid size enumerated while looking for the knot.
  int max_enumerate = 7;
  /// Extra sizes enumerated beyond the arc index.
  int extra_sizes = 0;
  /// Points with tb >= max_tb - tb_window are clustered.
  int tb_window = 0;
  /// Stabilization levels drawn below the lowest peak.
  int depth = 1;
  std::optional<ClassCache> cache;
  std::map<std::string, int> mfw_bounds;
};

namespace detail {

inline std::string graded_ruling_cell(const GridDiagram& g) { return ruling_cell(g, RulingMode::zero_graded); }

inline bool rulings_differ(const ClassRecord& a, const ClassRecord& b) { return a.ruling != b.ruling || a.ruling_graded != b.ruling_graded; }

inline SymmetryStatus symmetry_status(const ClassRecord& rec, const GridDiagram& image, const SearchBudget& budget, int& hits) {
  if (classical_invariants(image) != rec.invariants) return SymmetryStatus::False;
  if (canonical_key(image) == canonical_key(rec.representative)) return SymmetryStatus::Proven;
  if (ruling_cell(image, RulingMode::ungraded) != rec.ruling || graded_ruling_cell(image) != rec.ruling_graded) return SymmetryStatus::False;
  SearchBudget b = budget;
  b.max_size = std::max(budget.max_size, image.size());
  IsotopyVerdict v = connect(rec.representative, image, EquivalenceMode::legendrian, b);
  if (v.connected) return SymmetryStatus::Proven;
  if (!v.stats.stopped_by.empty()) ++hits;
  return SymmetryStatus::Conjectured;
}

/// Groups labelled diagrams by Legendrian connectivity, in input order.
inline MergeCell merge_groups(const std::vector<std::pair<std::string, GridDiagram>>& images, const SearchBudget& budget, int& hits) {
  MergeCell cell;
  std::vector<GridDiagram> reps;
  for (const auto& [label, g] : images) {
    std::size_t home = reps.size();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      SearchBudget b = budget;
      b.max_size = std::max({budget.max_size, g.size(), reps[i].size()});
      IsotopyVerdict v = connect(g, reps[i], EquivalenceMode::legendrian, b);
      if (v.connected) {
        home = i;
        break;
      }
      if (!v.stats.stopped_by.empty()) ++hits;
    }
    if (home == reps.size()) {
      reps.push_back(g);
      cell.groups.push_back({});
      if (cell.groups.size() > 1) cell.separators.push_back(':');
    }
    cell.groups[home].push_back(label);
  }
  return cell;
}

}  // namespace detail

/// Legendrian atlas entry for one knot type from exhaustive enumeration up to
/// options.max_enumerate. Completeness is conditional: classes whose peaks need
/// larger grids than were enumerated do not appear.
inline AtlasRecord build_atlas(const std::string& knot, const AtlasOptions& options) {
  AtlasRecord rec;
  rec.budget = options.budget;
  std::map<std::pair<int, int>, std::vector<GridDiagram>> by_point;
  int arc_index = 0;
  for (int n = 2; n <= options.max_enumerate; ++n) {
    if (arc_index && n > arc_index + options.extra_sizes) break;
    enumerate(n, {}, [&](const GridDiagram& g) {
      KnotId id = identify(g);
      if (id.name != knot) return;
      if (!arc_index) {
        arc_index = n;
        rec.knot = id;
      }
      auto ci = classical_invariants(g);
      by_point[{ci.tb, ci.r}].push_back(g);
    });
  }
  if (!arc_index)
    throw Error(ErrorCode::NotFound, "no diagram of " + knot + " up to size " + std::to_string(options.max_enumerate));
  rec.arc_index = arc_index;
  rec.max_tb = std::numeric_limits<int>::min();
  for (const auto& [point, gs] : by_point) rec.max_tb = std::max(rec.max_tb, point.first);

  ClassTable all;
  for (const auto& [point, gs] : by_point) {
    auto [tb, r] = point;
    if (tb < rec.max_tb - options.tb_window) continue;
    ClassTable t;
    std::optional<std::vector<std::vector<CanonicalKey>>> cached;
    if (options.cache) cached = options.cache->load(knot, tb, r, EquivalenceMode::legendrian);
    if (cached) {
      t = class_table_from_keys(*cached);
    } else {
      t = cluster(gs, EquivalenceMode::legendrian, options.budget);
      if (options.cache) options.cache->store(knot, tb, r, EquivalenceMode::legendrian, t);
    }
    rec.budget_hits += t.budget_hits;
    for (auto& c : t.classes) {
      c.knot = rec.knot;
      all.classes.push_back(std::move(c));
    }
  }

  // Classes ordered top to bottom, then by r, then by key.
  std::sort(all.classes.begin(), all.classes.end(), [](const DiagramClass& a, const DiagramClass& b) {
    if (a.invariants.tb != b.invariants.tb) return a.invariants.tb > b.invariants.tb;
    if (a.invariants.r != b.invariants.r) return a.invariants.r < b.invariants.r;
    return canonical_key(a.representative) < canonical_key(b.representative);
  });
  for (std::size_t i = 0; i < all.classes.size(); ++i) {
    const auto& c = all.classes[i];
    ClassRecord cr;
    cr.label = "L_" + std::to_string(i + 1);
    cr.representative = c.representative;
    cr.invariants = c.invariants;
    cr.members = c.members.size();
    cr.ruling = ruling_cell(c.representative, RulingMode::ungraded);
    cr.ruling_graded = detail::graded_ruling_cell(c.representative);
    cr.theta = theta_obstruction(c.representative);
    rec.classes.push_back(std::move(cr));
  }
  for (auto& cr : rec.classes) {
    cr.reverse_equal = detail::symmetry_status(cr, reverse(cr.representative), options.budget, rec.budget_hits);
    cr.mirror_equal = detail::symmetry_status(cr, mirror_mu(cr.representative), options.budget, rec.budget_hits);
    cr.transverse_equal = detail::symmetry_status(cr, transverse_mirror(cr.representative), options.budget, rec.budget_hits);
    cr.status = Distinctness::Proven;
    for (const auto& other : rec.classes)
      if (&other != &cr && other.invariants == cr.invariants && !detail::rulings_differ(cr, other)) cr.status = Distinctness::Conjectured;
  }

  SearchBudget probe = options.budget;
  rec.mountain = mountain_range(knot, all, probe, options.depth);
  rec.budget_hits += rec.mountain.budget_hits;

  std::map<std::pair<int, int>, std::vector<const ClassRecord*>> same_point;
  for (const auto& cr : rec.classes) same_point[{cr.invariants.tb, cr.invariants.r}].push_back(&cr);
  for (auto it = same_point.rbegin(); it != same_point.rend(); ++it) {
    const auto& members = it->second;
    if (members.size() < 2) continue;
    rec.nonsimple_candidate = true;
    std::vector<std::pair<std::string, GridDiagram>> plus, minus;
    for (const auto* cr : members) {
      plus.emplace_back(cr->label, stabilize_plus(cr->representative));
      minus.emplace_back(cr->label, stabilize_minus(cr->representative));
    }
    MergeEntry e;
    e.tb = it->first.first;
    e.r = it->first.second;
    e.plus = detail::merge_groups(plus, probe, rec.budget_hits);
    e.minus = detail::merge_groups(minus, probe, rec.budget_hits);
    rec.merge_table.push_back(std::move(e));
  }
  if (auto it = options.mfw_bounds.find(knot); it != options.mfw_bounds.end()) rec.mfw_bound = it->second;
  return rec;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

inline json grid_json(const GridDiagram& g) {
  json x = json::array(), o = json::array();
  for (int c = 0; c < g.size(); ++c) {
    x.push_back(g.x_row(c));
    o.push_back(g.o_row(c));
  }
  return json{{"n", g.size()}, {"x", x}, {"o", o}};
}

inline GridDiagram grid_from_json(const json& j) {
  auto x = j.at("x").get<std::vector<int>>();
  auto o = j.at("o").get<std::vector<int>>();
  if (j.at("n").get<int>() != static_cast<int>(x.size())) throw Error(ErrorCode::Parse, "grid n does not match its rows");
  return validate(x, o);
}

}  // namespace detail

inline nlohmann::json atlas_record_json(const AtlasRecord& rec) {
  using nlohmann::json;
  json classes = json::array();
  for (const auto& c : rec.classes) {
    classes.push_back(json{
        {"label", c.label},
        {"representative", detail::grid_json(c.representative)},
        {"tb", c.invariants.tb},
        {"r", c.invariants.r},
        {"sl", c.invariants.sl},
        {"members", c.members},
        {"ruling", c.ruling},
        {"ruling_graded", c.ruling_graded},
        {"theta_obstructed", c.theta},
        {"symmetry", json{{"L=-L", to_string(c.reverse_equal)}, {"L=mu(L)", to_string(c.mirror_equal)}, {"L=-mu(L)", to_string(c.transverse_equal)}}},
        {"status", to_string(c.status)},
    });
  }
  json merges = json::array();
  for (const auto& m : rec.merge_table)
    merges.push_back(json{{"tb", m.tb}, {"r", m.r}, {"plus", format_merge_cell(m.plus)}, {"minus", format_merge_cell(m.minus)}});
  json points = json::array();
  for (const auto& p : rec.mountain.points) {
    json reps = json::array();
    for (const auto& g : p.representatives) reps.push_back(detail::grid_json(g));
    points.push_back(json{{"tb", p.tb}, {"r", p.r}, {"peak", p.peak}, {"probed", p.probed}, {"merged_plus", p.merged_plus},
                          {"merged_minus", p.merged_minus}, {"representatives", reps}});
  }
  json arrows = json::array();
  for (const auto& a : rec.mountain.arrows)
    arrows.push_back(json{{"from", {a.from.first, a.from.second}}, {"to", {a.to.first, a.to.second}}, {"sign", a.positive ? "+" : "-"}});
  return json{
      {"knot", json{{"name", rec.knot.name}, {"ambiguous", rec.knot.ambiguous}}},
      {"arc_index", rec.arc_index},
      {"max_tb", rec.max_tb},
      {"classes", classes},
      {"merge_table", merges},
      {"nonsimple_candidate", rec.nonsimple_candidate},
      {"mfw_bound", rec.mfw_bound ? json(*rec.mfw_bound) : json(nullptr)},
      {"mountain_range", json{{"points", points}, {"arrows", arrows}, {"budget_hits", rec.mountain.budget_hits}}},
      {"search", json{{"max_size", rec.budget.max_size},
                      {"max_visited", rec.budget.max_visited},
                      {"max_millis", rec.budget.max_millis},
                      {"budget_hits", rec.budget_hits}}},
  };
}

/// Stable-ordered JSON document: {"atlas": [records...]}.
inline std::string export_atlas(const std::vector<AtlasRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(atlas_record_json(r));
  return nlohmann::json{{"atlas", arr}}.dump(2) + "\n";
}

inline AtlasRecord atlas_record_from_json(const nlohmann::json& j) {
  AtlasRecord rec;
  rec.knot.name = j.at("knot").at("name").get<std::string>();
  rec.knot.ambiguous = j.at("knot").at("ambiguous").get<bool>();
  rec.arc_index = j.at("arc_index").get<int>();
  rec.max_tb = j.at("max_tb").get<int>();
  for (const auto& c : j.at("classes")) {
    ClassRecord cr;
    cr.label = c.at("label").get<std::string>();
    cr.representative = detail::grid_from_json(c.at("representative"));
    cr.invariants = {c.at("tb").get<int>(), c.at("r").get<int>(), c.at("sl").get<int>()};
    cr.members = c.at("members").get<std::size_t>();
    cr.ruling = c.at("ruling").get<std::string>();
    cr.ruling_graded = c.at("ruling_graded").get<std::string>();
    cr.theta = c.at("theta_obstructed").get<bool>();
    const auto& s = c.at("symmetry");
    cr.reverse_equal = parse_symmetry(s.at("L=-L").get<std::string>());
    cr.mirror_equal = parse_symmetry(s.at("L=mu(L)").get<std::string>());
    cr.transverse_equal = parse_symmetry(s.at("L=-mu(L)").get<std::string>());
    cr.status = parse_distinctness(c.at("status").get<std::string>());
    rec.classes.push_back(std::move(cr));
  }
  for (const auto& m : j.at("merge_table"))
    rec.merge_table.push_back({m.at("tb").get<int>(), m.at("r").get<int>(), parse_merge_cell(m.at("plus").get<std::string>()),
                               parse_merge_cell(m.at("minus").get<std::string>())});
  rec.nonsimple_candidate = j.at("nonsimple_candidate").get<bool>();
  if (!j.at("mfw_bound").is_null()) rec.mfw_bound = j.at("mfw_bound").get<int>();
  const auto& mr = j.at("mountain_range");
  rec.mountain.knot = rec.knot.name;
  rec.mountain.budget_hits = mr.at("budget_hits").get<int>();
  for (const auto& p : mr.at("points")) {
    RangePoint rp;
    rp.tb = p.at("tb").get<int>();
    rp.r = p.at("r").get<int>();
    rp.peak = p.at("peak").get<bool>();
    rp.probed = p.at("probed").get<bool>();
    rp.merged_plus = p.at("merged_plus").get<bool>();
    rp.merged_minus = p.at("merged_minus").get<bool>();
    for (const auto& g : p.at("representatives")) rp.representatives.push_back(detail::grid_from_json(g));
    rec.mountain.points.push_back(std::move(rp));
  }
  for (const auto& a : mr.at("arrows")) {
    RangeArrow ra;
    ra.from = {a.at("from").at(0).get<int>(), a.at("from").at(1).get<int>()};
    ra.to = {a.at("to").at(0).get<int>(), a.at("to").at(1).get<int>()};
    ra.positive = a.at("sign").get<std::string>() == "+";
    rec.mountain.arrows.push_back(ra);
  }
  const auto& s = j.at("search");
  rec.budget.max_size = s.at("max_size").get<int>();
  rec.budget.max_visited = s.at("max_visited").get<std::size_t>();
  rec.budget.max_millis = s.at("max_millis").get<std::int64_t>();
  rec.budget_hits = s.at("budget_hits").get<int>();
  return rec;
}

inline std::vector<AtlasRecord> import_atlas(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("atlas JSON: ") + e.what());
  }
  std::vector<AtlasRecord> out;
  try {
    for (const auto& r : j.at("atlas")) out.push_back(atlas_record_from_json(r));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("atlas JSON: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering. tb runs down the page, r across; S+ arrows point down-right, S- down-left.

inline std::string render_mountain_range_txt(const MountainRange& mr) {
  std::ostringstream out;
  out << "mountain range: " << mr.knot << "\n";
  if (mr.points.empty()) return out.str();
  int rmin = mr.points.front().r, rmax = rmin;
  for (const auto& p : mr.points) {
    rmin = std::min(rmin, p.r);
    rmax = std::max(rmax, p.r);
  }
  const int margin = 8;
  const int width = margin + 4 * (rmax - rmin) + 3;
  auto col = [&](int r) { return margin + 4 * (r - rmin) + 1; };
  std::map<int, std::vector<const RangePoint*>> rows;
  for (const auto& p : mr.points) rows[p.tb].push_back(&p);

  std::string axis(static_cast<std::size_t>(width), ' ');
  axis.replace(0, 3, "r: ");
  for (int r = rmin; r <= rmax; ++r) {
    std::string label = std::to_string(r);
    int at = col(r) - static_cast<int>(label.size()) / 2;
    axis.replace(static_cast<std::size_t>(at), label.size(), label);
  }
  while (!axis.empty() && axis.back() == ' ') axis.pop_back();
  out << axis << "\n";
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    std::string line(static_cast<std::size_t>(width), ' ');
    std::string tb = "tb " + std::to_string(it->first);
    line.replace(0, tb.size(), tb);
    for (const auto* p : it->second) {
      int c = col(p->r);
      if (p->boxed()) {
        std::string box = "[" + std::string(static_cast<std::size_t>(p->multiplicity()), 'o') + "]";
        if (line.size() < static_cast<std::size_t>(c - 1) + box.size()) line.resize(static_cast<std::size_t>(c - 1) + box.size(), ' ');
        line.replace(static_cast<std::size_t>(c - 1), box.size(), box);
      }
      else line[static_cast<std::size_t>(c)] = p->peak ? '*' : 'o';
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
    std::string arrows(static_cast<std::size_t>(width), ' ');
    bool any = false;
    for (const auto& a : mr.arrows) {
      if (a.from.first != it->first) continue;
      int c = col(a.from.second) + (a.positive ? 2 : -2);
      arrows[static_cast<std::size_t>(c)] = a.positive ? '\\' : '/';
      any = true;
    }
    while (!arrows.empty() && arrows.back() == ' ') arrows.pop_back();
    if (any) out << arrows << "\n";
  }
  out << "rows:\n";
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    out << "  ";
    for (std::size_t i = 0; i < it->second.size(); ++i)
      out << (i ? "," : "") << "(" << it->second[i]->tb << "," << it->second[i]->r << ")";
    out << "\n";
  }
  for (const auto& p : mr.points) {
    if (!p.boxed()) continue;
    out << "box (" << p.tb << "," << p.r << "): " << p.multiplicity() << " classes";
    if (p.persists()) out << ", persists under S+ and S-";
    else if (p.probed) {
      out << ", merged after";
      if (p.merged_plus) out << " S+";
      if (p.merged_plus && p.merged_minus) out << " and";
      if (p.merged_minus) out << " S-";
    }
    out << "\n";
  }
  return out.str();
}

inline std::string render_mountain_range_svg(const MountainRange& mr) {
  std::ostringstream out;
  int rmin = 0, rmax = 0, tbmin = 0, tbmax = 0;
  if (!mr.points.empty()) {
    rmin = rmax = mr.points.front().r;
    tbmin = tbmax = mr.points.front().tb;
  }
  for (const auto& p : mr.points) {
    rmin = std::min(rmin, p.r);
    rmax = std::max(rmax, p.r);
    tbmin = std::min(tbmin, p.tb);
    tbmax = std::max(tbmax, p.tb);
  }
  const int step = 60, pad = 60;
  const int width = 2 * pad + step * (rmax - rmin);
  const int height = 2 * pad + step * (tbmax - tbmin);
  auto x = [&](int r) { return pad + step * (r - rmin); };
  auto y = [&](int tb) { return pad + step * (tbmax - tb); };
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<title>mountain range: " << mr.knot << "</title>\n";
  out << "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\">"
         "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"black\"/></marker></defs>\n";
  if (mr.points.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" font-size=\"14\" text-anchor=\"middle\">r</text>\n";
  out << "<text x=\"12\" y=\"" << height / 2 << "\" font-size=\"14\">tb</text>\n";
  for (const auto& p : mr.points) {
    out << "<text x=\"" << x(p.r) << "\" y=\"" << y(p.tb) - 14 << "\" font-size=\"10\" text-anchor=\"middle\">(" << p.tb << "," << p.r
        << ")</text>\n";
  }
  for (const auto& a : mr.arrows) {
    int x1 = x(a.from.second), y1 = y(a.from.first), x2 = x(a.to.second), y2 = y(a.to.first);
    // Stop short of both dots.
    int dx = x2 > x1 ? 8 : -8;
    out << "<line x1=\"" << x1 + dx << "\" y1=\"" << y1 + 8 << "\" x2=\"" << x2 - dx << "\" y2=\"" << y2 - 8
        << "\" stroke=\"black\" marker-end=\"url(#head)\"/>\n";
  }
  for (const auto& p : mr.points) {
    const int k = p.multiplicity();
    const int cx = x(p.r), cy = y(p.tb);
    if (p.boxed()) {
      int half = 6 * k + 4;
      out << "<rect x=\"" << cx - half << "\" y=\"" << cy - 10 << "\" width=\"" << 2 * half << "\" height=\"20\" fill=\"none\" stroke=\"black\"/>\n";
    }
    for (int i = 0; i < k; ++i) {
      int dot = cx + 12 * i - 6 * (k - 1);
      out << "<circle cx=\"" << dot << "\" cy=\"" << cy << "\" r=\"4\" fill=\"black\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gridatlas
