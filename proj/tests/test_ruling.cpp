#include <gtest/gtest.h>

#include <random>

#include "gridatlas/ruling.hpp"
#include "gridatlas/search.hpp"
#include "oracles.hpp"

using namespace gridatlas;

namespace {

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

LaurentPolynomial z_poly(std::vector<std::pair<int, std::int64_t>> terms) { return LaurentPolynomial::from_terms(terms); }

const GridDiagram kRhTrefoil = validate({0, 4, 3, 2, 1}, {2, 1, 0, 4, 3});
const GridDiagram kFigureEight = validate({0, 1, 3, 2, 5, 4}, {2, 5, 0, 4, 3, 1});
const GridDiagram kFigureEightOther = validate({0, 1, 4, 5, 3, 2}, {3, 5, 0, 2, 1, 4});
const GridDiagram kRhCinquefoil = validate({0, 6, 5, 4, 3, 2, 1}, {2, 1, 0, 6, 5, 4, 3});

}  // namespace

TEST(Front, UnknotIsOneEye) {
  Front f = grid_to_front(validate({0, 1}, {1, 0}));
  ASSERT_EQ(f.events.size(), 2u);
  EXPECT_EQ(f.events[0].kind, FrontEventKind::LeftCusp);
  EXPECT_EQ(f.events[1].kind, FrontEventKind::RightCusp);
  EXPECT_EQ(f.tb(), -1);
  EXPECT_EQ(ruling_polynomial(f, RulingMode::ungraded).value, LaurentPolynomial(1));
  EXPECT_EQ(ruling_polynomial(f, RulingMode::zero_graded).value, LaurentPolynomial(1));
}

TEST(Front, CuspsAndCrossingsMatchGrid) {
  for (const auto& g : small_knots(6)) {
    Front f = grid_to_front(g);
    auto census = corner_census(g);
    int left = 0, crossing_events = 0;
    for (const auto& e : f.events) {
      left += e.kind == FrontEventKind::LeftCusp;
      crossing_events += e.kind == FrontEventKind::Crossing;
    }
    EXPECT_EQ(f.right_cusps(), census.se);
    EXPECT_EQ(left, census.nw);
    EXPECT_EQ(crossing_events, static_cast<int>(crossings(g).size()));
    EXPECT_EQ(f.writhe(), writhe(g));
    EXPECT_EQ(f.tb(), classical_invariants(g).tb);
    EXPECT_EQ(f.rotation, classical_invariants(g).r);
    EXPECT_EQ(f.modulus, 2 * std::abs(f.rotation));
  }
}

TEST(Front, DegreesRespectModulus) {
  for (const auto& g : small_knots(6)) {
    Front f = grid_to_front(g);
    for (int d : maslov_and_degrees(f)) {
      if (f.modulus == 0) continue;
      EXPECT_GE(d, 0);
      EXPECT_LT(d, f.modulus);
    }
  }
  for (int d : maslov_and_degrees(grid_to_front(kRhTrefoil))) EXPECT_EQ(d, 0);
}

TEST(Front, MultiComponentRejected) {
  EXPECT_EQ(code_of([] { grid_to_front(validate({0, 1, 2, 3}, {1, 0, 3, 2})); }), ErrorCode::MultiComponent);
}

TEST(Rulings, MatchSubsetEnumeration) {
  for (const auto& g : small_knots(6)) {
    Front f = grid_to_front(g);
    EXPECT_EQ(ruling_polynomial(f, RulingMode::ungraded).value, oracle::rulings_by_subsets(f, false)) << format_grid(g);
    if (f.rotation == 0) {
      EXPECT_EQ(ruling_polynomial(f, RulingMode::zero_graded).value, oracle::rulings_by_subsets(f, true)) << format_grid(g);
    }
  }
  std::mt19937 rng(17);
  auto seven = enumerate(7);
  for (int i = 0; i < 300; ++i) {
    const GridDiagram& g = seven[rng() % seven.size()];
    Front f = grid_to_front(g);
    EXPECT_EQ(ruling_polynomial(f, RulingMode::ungraded).value, oracle::rulings_by_subsets(f, false)) << format_grid(g);
  }
}

TEST(Rulings, CalibrationRows) {
  ASSERT_EQ(classical_invariants(kRhTrefoil), (ClassicalInvariants{1, 0, 1}));
  EXPECT_EQ(ruling_polynomial(kRhTrefoil, RulingMode::zero_graded).value, z_poly({{0, 2}, {2, 1}}));
  EXPECT_EQ(ruling_polynomial(kRhTrefoil, RulingMode::ungraded).value, z_poly({{0, 2}, {2, 1}}));
  for (const auto& g : {kFigureEight, kFigureEightOther}) {
    ASSERT_EQ(classical_invariants(g).tb, -3);
    EXPECT_EQ(ruling_polynomial(g, RulingMode::zero_graded).value, LaurentPolynomial(1));
    EXPECT_EQ(ruling_polynomial(g, RulingMode::ungraded).value, z_poly({{0, 1}, {2, 1}}));
  }
  ASSERT_EQ(classical_invariants(kRhCinquefoil), (ClassicalInvariants{3, 0, 3}));
  EXPECT_EQ(ruling_polynomial(kRhCinquefoil, RulingMode::zero_graded).value, z_poly({{0, 3}, {2, 4}, {4, 1}}));
  EXPECT_EQ(ruling_polynomial(kRhCinquefoil, RulingMode::zero_graded).to_string(), "3+4z^2+z^4");
}

TEST(Rulings, InvariantUnderLegendrianMoves) {
  for (const auto& g : small_knots(5)) {
    auto ungraded = ruling_polynomial(g, RulingMode::ungraded).value;
    bool graded_ok = classical_invariants(g).r == 0;
    auto graded = graded_ok ? ruling_polynomial(g, RulingMode::zero_graded).value : LaurentPolynomial();
    for (const auto& nb : neighbors(g, EquivalenceMode::legendrian, g.size() + 1)) {
      EXPECT_EQ(ruling_polynomial(nb.result, RulingMode::ungraded).value, ungraded) << format_grid(g);
      if (graded_ok) {
        EXPECT_EQ(ruling_polynomial(nb.result, RulingMode::zero_graded).value, graded) << format_grid(g);
      }
    }
  }
}

TEST(Rulings, StabilizedFrontsHaveNone) {
  for (const auto& g : small_knots(5)) {
    for (int c = 0; c < g.size(); ++c) {
      EXPECT_TRUE(ruling_polynomial(stabilize_x(g, c, StabVariant::NW), RulingMode::ungraded).value.is_zero());
      EXPECT_TRUE(ruling_polynomial(stabilize_x(g, c, StabVariant::SE), RulingMode::ungraded).value.is_zero());
    }
  }
  EXPECT_EQ(ruling_cell(stabilize_x(kRhTrefoil, 0, StabVariant::NW), RulingMode::ungraded), "∅");
}

TEST(Rulings, GradedBoundedByUngraded) {
  for (const auto& g : small_knots(6)) {
    Front f = grid_to_front(g);
    if (f.rotation != 0) continue;
    auto graded = ruling_polynomial(f, RulingMode::zero_graded).value;
    auto ungraded = ruling_polynomial(f, RulingMode::ungraded).value;
    for (auto [e, c] : graded.terms()) EXPECT_LE(c, ungraded.coefficient(e));
    EXPECT_EQ(graded.is_zero(), ungraded.is_zero());
  }
}

TEST(Rulings, NonZeroRotation) {
  GridDiagram trefoil = validate({2, 3, 4, 0, 1}, {0, 1, 2, 3, 4});
  EXPECT_EQ(code_of([&] { ruling_polynomial(trefoil, RulingMode::zero_graded); }), ErrorCode::NonZeroRotation);
  EXPECT_EQ(ruling_cell(trefoil, RulingMode::zero_graded), "-");
  EXPECT_NO_THROW(ruling_polynomial(trefoil, RulingMode::ungraded));
  EXPECT_EQ(code_of([] { ruling_polynomial(Front{}, RulingMode::ungraded); }), ErrorCode::Disconnected);
}

TEST(Rulings, NormalSwitchConfigurations) {
  // Switch at strands 3, 4.
  EXPECT_TRUE(detail::normal_switch(3, 1, 6));   // side by side
  EXPECT_TRUE(detail::normal_switch(3, 2, 0));   // both below, nested
  EXPECT_TRUE(detail::normal_switch(3, 7, 5));   // both above, nested
  EXPECT_FALSE(detail::normal_switch(3, 0, 2));  // interlaced below
  EXPECT_FALSE(detail::normal_switch(3, 5, 7));  // interlaced above
  EXPECT_FALSE(detail::normal_switch(3, 6, 1));
}
