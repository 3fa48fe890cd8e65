#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gridatlas/atlas.hpp"

using namespace gridatlas;

namespace {

GridDiagram read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  return parse_grid(in);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
}

EquivalenceMode parse_mode(const std::string& s) {
  if (s == "top") return EquivalenceMode::topological;
  if (s == "leg") return EquivalenceMode::legendrian;
  return EquivalenceMode::transverse;
}

struct BudgetFlags {
  int max_size = -1;
  std::size_t max_visited = SearchBudget{}.max_visited;
  std::int64_t max_millis = SearchBudget{}.max_millis;

  void attach(CLI::App* app) {
    app->add_option("--max-size", max_size, "Largest grid size the search may visit (default: input size + 2)");
    app->add_option("--max-visited", max_visited, "Node ceiling per search")->capture_default_str();
    app->add_option("--max-millis", max_millis, "Wall-clock ceiling per search in ms (0 = none)")->capture_default_str();
  }

  SearchBudget budget(int input_size) const {
    SearchBudget b;
    b.max_size = max_size > 0 ? max_size : input_size + 2;
    b.max_visited = max_visited;
    b.max_millis = max_millis;
    return b;
  }
};

void print_stats(const SearchStats& s) {
  std::cout << "visited_forward=" << s.visited_forward << " visited_backward=" << s.visited_backward << " frontier_forward=" << s.frontier_forward
            << " frontier_backward=" << s.frontier_backward << " stopped_by=" << (s.stopped_by.empty() ? "none" : s.stopped_by) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridatlas: grid diagrams, Legendrian and transverse knot atlases"};
  app.require_subcommand(1);
  const std::vector<std::string> modes{"top", "leg", "trans"};

  std::string file, file_b, mode = "leg", knot, out_path, format = "txt", path_file;
  int n = 0;
  bool graded = false, prune = false, count_only = false, verbose = false;
  BudgetFlags flags;

  auto* invariants = app.add_subcommand("invariants", "Print tb, r and sl of a knot diagram");
  invariants->add_option("diagram", file, "Grid file")->required();
  invariants->add_flag("-v,--verbose", verbose, "Also print crossings, Jones polynomial, determinant and knot type");

  auto* moves = app.add_subcommand("moves", "List the moves available from a diagram, or replay a move path");
  moves->add_option("diagram", file, "Grid file")->required();
  moves->add_option("--mode", mode, "Equivalence mode")->check(CLI::IsMember(modes))->capture_default_str();
  moves->add_option("--apply", path_file, "Replay the moves in this file and print the result");
  flags.attach(moves);

  auto* connect_cmd = app.add_subcommand("connect", "Search for a move path between two diagrams");
  connect_cmd->add_option("a", file, "Grid file")->required();
  connect_cmd->add_option("b", file_b, "Grid file")->required();
  connect_cmd->add_option("--mode", mode, "Equivalence mode")->check(CLI::IsMember(modes))->capture_default_str();
  flags.attach(connect_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List knot diagrams of size n up to torus translation");
  enumerate_cmd->add_option("n", n, "Grid size")->required()->check(CLI::Range(2, 9));
  enumerate_cmd->add_flag("--prune", prune, "Skip diagrams with a destabilizable 2x2 block");
  enumerate_cmd->add_option("--knot", knot, "Only diagrams of this knot type");
  enumerate_cmd->add_flag("--count", count_only, "Print only the number of diagrams");

  auto* classify = app.add_subcommand("classify", "Cluster all knot diagrams of size <= n into classes");
  classify->add_option("n", n, "Largest enumerated size")->required()->check(CLI::Range(2, 8));
  classify->add_option("--mode", mode, "Equivalence mode")->check(CLI::IsMember(modes))->capture_default_str();
  classify->add_option("--knot", knot, "Only this knot type");
  flags.attach(classify);

  auto* atlas = app.add_subcommand("atlas", "Build the atlas record of a knot type as JSON");
  AtlasOptions atlas_options;
  std::string mfw_file;
  atlas->add_option("--knot", knot, "Knot name, e.g. m(5_2)")->required();
  atlas->add_option("--max-enumerate", atlas_options.max_enumerate, "Largest grid size enumerated")->capture_default_str();
  atlas->add_option("--extra-sizes", atlas_options.extra_sizes, "Sizes enumerated beyond the arc index")->capture_default_str();
  atlas->add_option("--tb-window", atlas_options.tb_window, "Cluster points with tb >= max_tb - window")->capture_default_str();
  atlas->add_option("--depth", atlas_options.depth, "Stabilization levels drawn below the peaks")->capture_default_str();
  atlas->add_option("--mfw", mfw_file, "Data file of tb+|r| bounds (knot<TAB>bound)");
  atlas->add_option("-o,--out", out_path, "Output file (default stdout)");
  flags.attach(atlas);

  auto* render = app.add_subcommand("render", "Render the mountain ranges of an atlas JSON file");
  render->add_option("atlas", file, "Atlas JSON file")->required();
  render->add_option("--format", format, "txt or svg")->check(CLI::IsMember({"txt", "svg"}))->capture_default_str();
  render->add_option("--knot", knot, "Only this knot");
  render->add_option("-o,--out", out_path, "Output file (default stdout)");

  auto* theta = app.add_subcommand("theta", "Check the theta-hat non-vanishing criterion");
  theta->add_option("diagram", file, "Grid file")->required();

  auto* ruling = app.add_subcommand("ruling", "Print the ruling polynomial of the diagram's front");
  ruling->add_option("diagram", file, "Grid file")->required();
  ruling->add_flag("--graded", graded, "Count zero-graded rulings only");

  auto* stuck = app.add_subcommand("stuck", "List non-minimal size-n diagrams that cannot reach a destabilization");
  stuck->add_option("n", n, "Grid size")->required()->check(CLI::Range(3, 8));

  auto* table = app.add_subcommand("table", "Write the knot identification table");
  table->add_option("-o,--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*invariants) {
      GridDiagram g = read_grid_file(file);
      auto ci = classical_invariants(g);
      std::cout << "tb=" << ci.tb << " r=" << ci.r << " sl=" << ci.sl << "\n";
      if (verbose) {
        auto v = jones(g, BracketOptions{96, 12});
        std::cout << "size=" << g.size() << " crossings=" << crossings(g).size() << " writhe=" << writhe(g) << "\n";
        std::cout << "jones=" << v.to_string("t") << " determinant=" << determinant(v) << "\n";
        auto id = identify(g);
        std::cout << "knot=" << id.name << (id.ambiguous ? " (ambiguous)" : "") << "\n";
      }
    } else if (*moves) {
      GridDiagram g = read_grid_file(file);
      if (!path_file.empty()) {
        std::cout << format_grid(replay(g, parse_path(read_text(path_file))));
      } else {
        // One neighbor per line; wrapped commutations list their two moves joined by "; ".
        for (const auto& m : neighbors(g, parse_mode(mode), flags.budget(g.size()).max_size)) {
          for (std::size_t i = 0; i < m.moves.size(); ++i) std::cout << (i ? "; " : "") << to_string(m.moves[i]);
          std::cout << "\n";
        }
      }
    } else if (*connect_cmd) {
      GridDiagram a = read_grid_file(file);
      GridDiagram b = read_grid_file(file_b);
      IsotopyVerdict v = connect(a, b, parse_mode(mode), flags.budget(std::max(a.size(), b.size())));
      std::cout << (v.connected ? "CONNECTED" : "EXHAUSTED") << "\n";
      if (v.connected) std::cout << format_path(v.path);
      else print_stats(v.stats);
    } else if (*enumerate_cmd) {
      std::size_t count = 0;
      enumerate(n, PruneFlags{prune}, [&](const GridDiagram& g) {
        if (!knot.empty() && identify(g).name != knot) return;
        ++count;
        if (!count_only) std::cout << format_grid(g) << "\n";
      });
      if (count_only) std::cout << count << "\n";
    } else if (*classify) {
      std::map<std::pair<std::string, std::pair<int, int>>, std::vector<GridDiagram>> groups;
      for (int m = 2; m <= n; ++m) {
        enumerate(m, {}, [&](const GridDiagram& g) {
          std::string name = identify(g).name;
          if (!knot.empty() && name != knot) return;
          auto ci = classical_invariants(g);
          groups[{name, {ci.tb, ci.r}}].push_back(g);
        });
      }
      for (const auto& [key, gs] : groups) {
        ClassTable t = cluster(gs, parse_mode(mode), flags.budget(n));
        std::cout << key.first << " (" << key.second.first << "," << key.second.second << ") diagrams=" << gs.size()
                  << " classes=" << t.classes.size() << " budget_hits=" << t.budget_hits << "\n";
      }
    } else if (*atlas) {
      atlas_options.budget = flags.budget(atlas_options.max_enumerate);
      atlas_options.cache = ClassCache::from_env();
      if (!mfw_file.empty()) atlas_options.mfw_bounds = read_mfw_bounds(mfw_file);
      write_text(out_path, export_atlas({build_atlas(knot, atlas_options)}));
    } else if (*render) {
      std::string doc;
      for (const auto& rec : import_atlas(read_text(file))) {
        if (!knot.empty() && rec.knot.name != knot) continue;
        doc += format == "svg" ? render_mountain_range_svg(rec.mountain) : render_mountain_range_txt(rec.mountain);
      }
      write_text(out_path, doc);
    } else if (*theta) {
      std::cout << (theta_obstruction(read_grid_file(file)) ? "OBSTRUCTED (theta nonzero)" : "INCONCLUSIVE") << "\n";
    } else if (*ruling) {
      std::cout << ruling_polynomial(read_grid_file(file), graded ? RulingMode::zero_graded : RulingMode::ungraded).to_string() << "\n";
    } else if (*stuck) {
      auto found = find_stuck(n);
      std::cout << found.size() << "\n";
      for (const auto& g : found) std::cout << format_grid(g) << "\n";
    } else if (*table) {
      std::ostringstream s;
      builtin_knot_table().write_tsv(s);
      write_text(out_path, s.str());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
