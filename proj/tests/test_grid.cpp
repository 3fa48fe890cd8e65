#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <algorithm>
#include <numeric>
#include <random>

#include "gridatlas/grid.hpp"
#include "gridatlas/knot_id.hpp"
#include "gridatlas/search.hpp"
#include "oracles.hpp"

using namespace gridatlas;

namespace {

GridDiagram load(const std::string& name) {
  std::ifstream in(std::string(GRIDATLAS_TEST_DATA) + "/" + name);
  return parse_grid(in);
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

std::vector<GridDiagram> small_knots(int max_n) {
  std::vector<GridDiagram> out;
  for (int n = 2; n <= max_n; ++n)
    for (auto& g : enumerate(n)) out.push_back(g);
  return out;
}

}  // namespace

TEST(Validate, RejectsBadInput) {
  EXPECT_EQ(code_of([] { validate({0, 0}, {1, 0}); }), ErrorCode::NotPermutation);
  EXPECT_EQ(code_of([] { validate({0, 2}, {1, 0}); }), ErrorCode::NotPermutation);
  EXPECT_EQ(code_of([] { validate({0, 1}, {1, -1}); }), ErrorCode::NotPermutation);
  EXPECT_EQ(code_of([] { validate({0, 1}, {0, 1}); }), ErrorCode::SharedSquare);
  EXPECT_EQ(code_of([] { validate({0, 1, 2}, {1, 0}); }), ErrorCode::SizeMismatch);
  EXPECT_EQ(code_of([] { validate(std::vector<int>{}, std::vector<int>{}); }), ErrorCode::SizeMismatch);
  EXPECT_EQ(code_of([] { validate(std::vector<int>(256, 0), std::vector<int>(256, 0)); }), ErrorCode::SizeMismatch);
}

TEST(Validate, InversesAgree) {
  GridDiagram g = validate({2, 3, 4, 0, 1}, {0, 1, 2, 3, 4});
  for (int c = 0; c < g.size(); ++c) {
    EXPECT_EQ(g.x_col(g.x_row(c)), c);
    EXPECT_EQ(g.o_col(g.o_row(c)), c);
  }
}

TEST(Parse, RoundTripAndComments) {
  GridDiagram g = load("trefoil.grid");
  EXPECT_EQ(g, validate({2, 3, 4, 0, 1}, {0, 1, 2, 3, 4}));
  EXPECT_EQ(parse_grid(format_grid(g)), g);
  EXPECT_EQ(parse_grid("  # note\n\nn=2\n X=0 1 \nO=1 0\n"), validate({0, 1}, {1, 0}));
}

TEST(Parse, RejectsMalformedText) {
  EXPECT_EQ(code_of([] { parse_grid("n=2\nX=0 1\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_grid("n=2\nX=0 1\nO=1 0\nextra=1\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_grid("m=2\nX=0 1\nO=1 0\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_grid("n=2\nX=0 1\nO=1 0 5\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_grid("n=2\nX=0 1x\nO=1 0\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_grid("n=2 3\nX=0 1\nO=1 0\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_grid("n=0\nX=\nO=\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { load("trailing_token.grid"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { load("shared_square.grid"); }), ErrorCode::SharedSquare);
}

TEST(Topology, ComponentsAgreeWithOracle) {
  EXPECT_EQ(components(validate({0, 1}, {1, 0})), 1);
  EXPECT_EQ(components(validate({0, 1, 2, 3}, {1, 0, 3, 2})), 2);
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    int n = 2 + static_cast<int>(rng() % 8);
    std::vector<int> x(static_cast<std::size_t>(n)), o;
    std::iota(x.begin(), x.end(), 0);
    std::shuffle(x.begin(), x.end(), rng);
    o = x;
    do std::shuffle(o.begin(), o.end(), rng);
    while ([&] {
      for (int c = 0; c < n; ++c)
        if (x[static_cast<std::size_t>(c)] == o[static_cast<std::size_t>(c)]) return true;
      return false;
    }());
    GridDiagram g = validate(x, o);
    EXPECT_EQ(components(g), oracle::components(g));
  }
}

TEST(Topology, CrossingsAgreeWithOracle) {
  for (const auto& g : small_knots(6)) {
    auto want = oracle::crossings(g);
    auto got = crossings(g);
    ASSERT_EQ(got.size(), want.size()) << format_grid(g);
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].column, std::get<0>(want[i]));
      EXPECT_EQ(got[i].row, std::get<1>(want[i]));
      EXPECT_EQ(got[i].sign, std::get<2>(want[i]));
    }
  }
}

TEST(Classical, FixtureValues) {
  EXPECT_EQ(classical_invariants(load("unknot2.grid")), (ClassicalInvariants{-1, 0, -1}));
  EXPECT_EQ(classical_invariants(load("trefoil.grid")), (ClassicalInvariants{-6, -1, -5}));
  EXPECT_EQ(classical_invariants(load("rh_trefoil_peak.grid")), (ClassicalInvariants{1, 0, 1}));
  EXPECT_EQ(code_of([] { classical_invariants(validate({0, 1, 2, 3}, {1, 0, 3, 2})); }), ErrorCode::MultiComponent);
}

TEST(Classical, CornerCensusBalances) {
  for (const auto& g : small_knots(6)) {
    auto census = corner_census(g);
    EXPECT_EQ(census.ne + census.nw + census.se + census.sw, 2 * g.size());
    // Every corner is a turn, so the signed tallies of a closed curve are even.
    EXPECT_EQ(census.signed_nw_se % 2, 0);
    EXPECT_EQ(census.signed_ne_sw % 2, 0);
  }
}

TEST(Classical, ParityAndSlDefinition) {
  for (const auto& g : small_knots(6)) {
    auto ci = classical_invariants(g);
    EXPECT_EQ(ci.sl, ci.tb - ci.r);
    // tb + r is odd for every Legendrian knot.
    EXPECT_NE((ci.tb + ci.r) % 2, 0) << format_grid(g);
  }
}

TEST(Classical, BennequinTypeBoundsOnSmallKnots) {
  // Maximal tb: unknot -1, 3_1 -6, m(3_1) 1, 4_1 -3. Slice genus bounds tb + |r| by 2g - 1.
  std::map<std::string, int> max_tb{{"unknot", -1}, {"3_1", -6}, {"m(3_1)", 1}, {"4_1", -3}};
  std::map<std::string, int> genus{{"unknot", 0}, {"3_1", 1}, {"m(3_1)", 1}, {"4_1", 1}};
  std::map<std::string, int> seen;
  for (const auto& g : small_knots(6)) {
    std::string name = identify(g).name;
    auto it = max_tb.find(name);
    if (it == max_tb.end()) continue;
    auto ci = classical_invariants(g);
    EXPECT_LE(ci.tb, it->second) << name << "\n" << format_grid(g);
    EXPECT_LE(ci.tb + std::abs(ci.r), 2 * genus[name] - 1) << name << "\n" << format_grid(g);
    auto [pos, inserted] = seen.emplace(name, ci.tb);
    if (!inserted) pos->second = std::max(pos->second, ci.tb);
  }
  for (auto [name, tb] : max_tb) EXPECT_EQ(seen[name], tb) << name;
}

TEST(Symmetries, InvariantTransforms) {
  for (const auto& g : small_knots(6)) {
    auto ci = classical_invariants(g);
    EXPECT_EQ(classical_invariants(reverse(g)), (ClassicalInvariants{ci.tb, -ci.r, ci.tb + ci.r}));
    EXPECT_EQ(classical_invariants(mirror_mu(g)), (ClassicalInvariants{ci.tb, -ci.r, ci.tb + ci.r}));
    EXPECT_EQ(classical_invariants(transverse_mirror(g)), ci);
    EXPECT_EQ(reverse(reverse(g)), g);
    EXPECT_EQ(mirror_mu(mirror_mu(g)), g);
    EXPECT_EQ(transpose(transpose(g)), g);
    EXPECT_EQ(topological_mirror(topological_mirror(g)), g);
    EXPECT_EQ(writhe(topological_mirror(g)), -writhe(g));
  }
}

TEST(Symmetries, TranslationKeepsInvariants) {
  for (const auto& g : small_knots(5)) {
    for (int dc = 0; dc < g.size(); ++dc) {
      for (int dr = 0; dr < g.size(); ++dr) {
        auto t = translated(g, dc, dr);
        EXPECT_EQ(classical_invariants(t), classical_invariants(g));
        EXPECT_EQ(canonical_key(t), canonical_key(g));
      }
    }
  }
}

TEST(Keys, CanonicalFormIsLeastTranslate) {
  for (const auto& g : small_knots(6)) {
    auto [x, o] = oracle::min_translate(g);
    GridDiagram want = validate(x, o);
    EXPECT_EQ(canonical_form(g), want);
    EXPECT_TRUE(is_canonical(want));
    EXPECT_EQ(diagram_from_key(canonical_key(g)), want);
    EXPECT_EQ(CanonicalKey::from_hex(canonical_key(g).hex()), canonical_key(g));
    EXPECT_EQ(canonical_key(g).grid_size(), g.size());
  }
}

TEST(Keys, UnorientedMergesReversal) {
  for (const auto& g : small_knots(5)) {
    EXPECT_EQ(canonical_key(g, KeyMode::unoriented), canonical_key(reverse(g), KeyMode::unoriented));
    auto a = oracle::min_translate(g), b = oracle::min_translate(reverse(g));
    EXPECT_EQ(diagram_from_key(canonical_key(g, KeyMode::unoriented)), std::min(validate(a.first, a.second), validate(b.first, b.second), [](const GridDiagram& l, const GridDiagram& r) {
                return std::make_pair(l.x_rows(), l.o_rows()) < std::make_pair(r.x_rows(), r.o_rows());
              }));
  }
}

TEST(Keys, RejectsMalformedKeys) {
  EXPECT_EQ(code_of([] { CanonicalKey::from_hex("abc"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { CanonicalKey::from_hex("zz"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { diagram_from_key(CanonicalKey::from_hex("0002")); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { diagram_from_key(CanonicalKey()); }), ErrorCode::Parse);
}
