#include <gtest/gtest.h>

#include <random>

#include "gridatlas/knot_id.hpp"
#include "gridatlas/moves.hpp"
#include "gridatlas/search.hpp"
#include "oracles.hpp"

using namespace gridatlas;

namespace {

std::vector<GridDiagram> small_knots(int max_n) {
  std::vector<GridDiagram> out;
  for (int n = 2; n <= max_n; ++n)
    for (auto& g : enumerate(n)) out.push_back(g);
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no gridatlas::Error thrown";
  return ErrorCode::Io;
}

const GridDiagram kTrefoil = validate({2, 3, 4, 0, 1}, {0, 1, 2, 3, 4});

}  // namespace

TEST(Commute, LegalityMatchesDefinition) {
  for (const auto& g : small_knots(6)) {
    for (int i = 0; i + 1 < g.size(); ++i) {
      bool cols = oracle::commutation_legal(g.x_row(i), g.o_row(i), g.x_row(i + 1), g.o_row(i + 1));
      bool rows = oracle::commutation_legal(g.x_col(i), g.o_col(i), g.x_col(i + 1), g.o_col(i + 1));
      EXPECT_EQ(is_legal(g, Commute{Axis::col, i}), cols);
      EXPECT_EQ(is_legal(g, Commute{Axis::row, i}), rows);
    }
  }
}

TEST(Commute, InvolutionAndInvariance) {
  for (const auto& g : small_knots(6)) {
    auto ci = classical_invariants(g);
    for (const auto& m : legal_commutations(g)) {
      GridDiagram h = commute(g, m);
      EXPECT_EQ(commute(h, m), g);
      EXPECT_EQ(classical_invariants(h), ci);
    }
  }
}

TEST(Commute, IllegalThrows) {
  // Columns 0 and 1 of the trefoil interleave.
  EXPECT_FALSE(is_legal(kTrefoil, Commute{Axis::col, 0}));
  EXPECT_EQ(code_of([] { commute(kTrefoil, Commute{Axis::col, 0}); }), ErrorCode::IllegalCommutation);
  EXPECT_FALSE(is_legal(kTrefoil, Commute{Axis::col, 4}));
  EXPECT_FALSE(is_legal(kTrefoil, Commute{Axis::row, -1}));
}

TEST(Translate, InverseDirectionsAndInvariance) {
  for (const auto& g : small_knots(5)) {
    EXPECT_EQ(torus_translate(torus_translate(g, Direction::up), Direction::down), g);
    EXPECT_EQ(torus_translate(torus_translate(g, Direction::left), Direction::right), g);
    EXPECT_EQ(classical_invariants(torus_translate(g, Direction::up)), classical_invariants(g));
    EXPECT_EQ(classical_invariants(torus_translate(g, Direction::left)), classical_invariants(g));
    EXPECT_EQ(replay(g, moves_to_canonical(g)), canonical_form(g));
  }
}

TEST(Translate, TranslationMovesReachTarget) {
  for (int dc = -7; dc <= 7; ++dc)
    for (int dr = -7; dr <= 7; ++dr) {
      auto path = translation_moves(dc, dr, 5);
      EXPECT_EQ(replay(kTrefoil, path), translated(kTrefoil, dc, dr));
      EXPECT_LE(path.size(), 4u);
    }
}

TEST(Stabilize, ClassicalDeltas) {
  struct Delta {
    StabVariant v;
    int dtb, dr;
  };
  const Delta deltas[] = {{StabVariant::NE, 0, 0}, {StabVariant::SW, 0, 0}, {StabVariant::NW, -1, 1}, {StabVariant::SE, -1, -1}};
  for (const auto& g : small_knots(5)) {
    auto ci = classical_invariants(g);
    auto v = jones(g);
    for (int c = 0; c < g.size(); ++c) {
      for (const auto& d : deltas) {
        GridDiagram s = stabilize_x(g, c, d.v);
        ASSERT_EQ(s.size(), g.size() + 1);
        EXPECT_EQ(components(s), 1);
        auto cs = classical_invariants(s);
        EXPECT_EQ(cs.tb, ci.tb + d.dtb) << to_string(d.v);
        EXPECT_EQ(cs.r, ci.r + d.dr) << to_string(d.v);
        EXPECT_EQ(jones(s), v);
      }
    }
  }
}

TEST(Stabilize, DestabilizationUndoesIt) {
  for (const auto& g : small_knots(5)) {
    for (int c = 0; c < g.size(); ++c) {
      for (StabVariant v : kAllVariants) {
        GridDiagram s = stabilize_x(g, c, v);
        bool found = false;
        for (const auto& d : destabilizations(s, EquivalenceMode::topological)) {
          ASSERT_EQ(d.moves.size(), 1u);
          EXPECT_EQ(replay(s, d.moves), d.result);
          if (d.result == g && std::get<DestabilizeX>(d.moves[0]).variant == v) found = true;
        }
        EXPECT_TRUE(found) << format_grid(g) << "col " << c << " " << to_string(v);
      }
    }
  }
}

TEST(Stabilize, ModeFiltering) {
  for (const auto& g : small_knots(4)) {
    for (auto mode : {EquivalenceMode::topological, EquivalenceMode::legendrian, EquivalenceMode::transverse}) {
      for (const auto& nb : neighbors(g, mode, g.size() + 1)) {
        for (const auto& m : nb.moves) EXPECT_TRUE(move_allowed(m, mode));
        EXPECT_EQ(replay(g, nb.moves), nb.result);
        if (mode == EquivalenceMode::legendrian) {
          EXPECT_EQ(classical_invariants(nb.result), classical_invariants(g));
        }
        if (mode == EquivalenceMode::transverse) {
          EXPECT_EQ(classical_invariants(nb.result).sl, classical_invariants(g).sl);
        }
      }
    }
  }
  EXPECT_TRUE(variant_allowed(StabVariant::SE, EquivalenceMode::transverse));
  EXPECT_FALSE(variant_allowed(StabVariant::NW, EquivalenceMode::transverse));
  EXPECT_FALSE(variant_allowed(StabVariant::SE, EquivalenceMode::legendrian));
}

TEST(Stabilize, NoStabilizationAtSizeCeiling) {
  for (const auto& nb : neighbors(kTrefoil, EquivalenceMode::legendrian, 5))
    for (const auto& m : nb.moves) EXPECT_FALSE(std::holds_alternative<StabilizeX>(m));
}

TEST(Stabilize, BadArguments) {
  EXPECT_EQ(code_of([] { stabilize_x(kTrefoil, 5, StabVariant::NE); }), ErrorCode::IllegalMove);
  EXPECT_EQ(code_of([] { destabilize(kTrefoil, DestabilizeX{0, 1, StabVariant::NE}); }), ErrorCode::IllegalMove);
  EXPECT_EQ(code_of([] { destabilize(kTrefoil, DestabilizeX{0, 0, StabVariant::NE}); }), ErrorCode::IllegalMove);
}

TEST(RandomWalk, LegendrianMovesKeepInvariants) {
  std::mt19937 rng(2024);
  GridDiagram g = kTrefoil;
  auto ci = classical_invariants(g);
  auto v = jones(g);
  for (int step = 0; step < 1500; ++step) {
    auto nbs = neighbors(g, EquivalenceMode::legendrian, 8);
    ASSERT_FALSE(nbs.empty());
    g = nbs[rng() % nbs.size()].result;
    ASSERT_EQ(classical_invariants(g), ci) << "step " << step;
    if (step % 50 == 0) {
      ASSERT_EQ(jones(g), v);
    }
  }
}

TEST(MoveText, RoundTrip) {
  MovePath path{TorusTranslate{Direction::left}, Commute{Axis::col, 3}, StabilizeX{2, StabVariant::SW}, DestabilizeX{4, 1, StabVariant::NW}};
  EXPECT_EQ(format_path(path), "TRANSLATE left\nCOMMUTE col 3\nSTAB X SW col 2\nDESTAB X NW at (4,1)\n");
  EXPECT_EQ(parse_path("# comment\n" + format_path(path) + "\n"), path);
  for (const auto& m : path) EXPECT_EQ(parse_move(to_string(m)), m);
}

TEST(MoveText, RejectsUnknownLines) {
  EXPECT_EQ(code_of([] { parse_move("SPIN 3"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_move("COMMUTE diag 1"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_move("STAB X NN col 1"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_path("TRANSLATE up\nnope\n"); }), ErrorCode::Parse);
}
