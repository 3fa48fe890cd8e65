#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gridatlas/knot_id.hpp"
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

BraidWord power(int strands, std::vector<int> word, int times) {
  BraidWord b{strands, {}};
  for (int i = 0; i < times; ++i) b.letters.insert(b.letters.end(), word.begin(), word.end());
  return b;
}

}  // namespace

TEST(Jones, TorusKnotsMatchClosedForm) {
  BracketOptions opts{64, 12};
  for (int q : {3, 5, 7, 9}) EXPECT_EQ(jones(braid_to_grid(power(2, {1}, q)), opts), oracle::torus_jones(2, q)) << q;
  EXPECT_EQ(jones(braid_to_grid(power(3, {1, 2}, 4)), opts), oracle::torus_jones(3, 4));
  EXPECT_EQ(jones(braid_to_grid(power(3, {1, 2}, 5)), opts), oracle::torus_jones(3, 5));
  EXPECT_EQ(jones(braid_to_grid(power(2, {-1}, 5)), opts), oracle::torus_jones(2, 5).inverted());
}

TEST(Jones, KnownSmallValues) {
  EXPECT_EQ(jones(validate({0, 1}, {1, 0})), LaurentPolynomial(1));
  auto fig8 = jones(braid_to_grid(BraidWord{3, {1, -2, 1, -2}}));
  EXPECT_EQ(fig8.to_string("t"), "t^-2-t^-1+1-t+t^2");
  EXPECT_EQ(fig8, fig8.inverted());
}

TEST(Jones, ValueAtOneIsOneForKnots) {
  for (int n = 2; n <= 6; ++n)
    for (const auto& g : enumerate(n)) EXPECT_EQ(jones(g).evaluate(1), 1);
}

TEST(Jones, TopologicalMirrorInverts) {
  for (int n = 2; n <= 6; ++n)
    for (const auto& g : enumerate(n)) EXPECT_EQ(jones(topological_mirror(g)), mirror_jones(jones(g)));
}

TEST(Bracket, FrontierMatchesStateSum) {
  int checked = 0;
  for (int n = 2; n <= 7; ++n) {
    for (const auto& g : enumerate(n)) {
      PDCode pd = pd_code(g);
      if (pd.crossings.size() > 12) continue;
      EXPECT_EQ(detail::bracket_frontier(pd), detail::bracket_state_sum(pd)) << format_grid(g);
      ++checked;
    }
  }
  EXPECT_GT(checked, 10000);
}

TEST(Bracket, CrossingCeiling) {
  GridDiagram big = braid_to_grid(power(2, {1}, 9));
  EXPECT_EQ(code_of([&] { jones(big, BracketOptions{4, 4}); }), ErrorCode::TooManyCrossings);
  EXPECT_EQ(code_of([] { jones(validate({0, 1, 2, 3}, {1, 0, 3, 2})); }), ErrorCode::HalfIntegralJones);
  EXPECT_EQ(code_of([] { determinant(validate({0, 1, 2, 3}, {1, 0, 3, 2})); }), ErrorCode::MultiComponent);
}

TEST(Determinant, ReferenceKnots) {
  const std::map<std::string, std::int64_t> want{{"3_1", 3},  {"4_1", 5},  {"5_1", 5},  {"5_2", 7},  {"6_1", 9},
                                                 {"6_2", 11}, {"6_3", 13}, {"7_1", 7},  {"7_2", 11}, {"7_3", 13},
                                                 {"7_4", 15}, {"7_5", 17}, {"7_6", 19}, {"7_7", 21}};
  BracketOptions opts{64, 12};
  for (const auto& rb : reference_braids()) {
    GridDiagram g = braid_to_grid(BraidWord{rb.strands, rb.letters});
    EXPECT_EQ(determinant(g, opts), want.at(rb.name)) << rb.name;
  }
}

TEST(Braids, ClosureIdentifiesAndSelfLinking) {
  for (const auto& rb : reference_braids()) {
    BraidWord b{rb.strands, rb.letters};
    GridDiagram g = braid_to_grid(b);
    EXPECT_EQ(g.size(), 2 * (b.strands + static_cast<int>(b.letters.size())));
    EXPECT_EQ(components(g), 1);
    EXPECT_EQ(identify(g).name, rb.name);
    EXPECT_FALSE(identify(g).ambiguous);
    EXPECT_EQ(classical_invariants(g).sl, b.writhe() - b.strands) << rb.name;
    std::string mirror_name = identify(braid_to_grid(mirror(b))).name;
    std::string plain = rb.name;
    bool amphichiral = plain == "4_1" || plain == "6_3";
    EXPECT_EQ(mirror_name, amphichiral ? plain : "m(" + plain + ")");
  }
}

TEST(Braids, ParseAndErrors) {
  EXPECT_EQ(parse_braid("3: 1 -2 1").strands, 3);
  EXPECT_EQ(parse_braid("1 -2 1").strands, 3);
  EXPECT_EQ(parse_braid("1 -2 1").letters, (std::vector<int>{1, -2, 1}));
  EXPECT_EQ(parse_braid("4: 1 1 1").writhe(), 3);
  EXPECT_EQ(code_of([] { parse_braid("2: 1 2"); }), ErrorCode::InvalidLetter);
  EXPECT_EQ(code_of([] { parse_braid("2: 0"); }), ErrorCode::InvalidLetter);
  EXPECT_EQ(code_of([] { parse_braid("2 3: 1"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_braid("1 x"); }), ErrorCode::Parse);
}

TEST(Identify, SmallGridKnotTypes) {
  std::map<std::string, int> counts;
  for (int n = 2; n <= 5; ++n)
    for (const auto& g : enumerate(n)) ++counts[identify(g).name];
  EXPECT_EQ(counts.size(), 3u);
  EXPECT_GT(counts["unknot"], 0);
  EXPECT_GT(counts["3_1"], 0);
  EXPECT_GT(counts["m(3_1)"], 0);
  EXPECT_EQ(identify(validate({0, 1, 2, 3}, {1, 0, 3, 2})).name, "Unknown");
}

TEST(Identify, UnknownPolynomial) {
  KnotId id = identify(LaurentPolynomial::monomial(7, 3), 7);
  EXPECT_FALSE(id.known());
}

TEST(Table, TsvRoundTripMatchesBuildArtifact) {
  std::ostringstream out;
  builtin_knot_table().write_tsv(out);
  std::istringstream in(out.str());
  KnotTable back = KnotTable::read_tsv(in);
  ASSERT_EQ(back.entries().size(), builtin_knot_table().entries().size());
  std::ifstream file(GRIDATLAS_KNOT_TABLE);
  ASSERT_TRUE(file.good());
  std::stringstream disk;
  disk << file.rdbuf();
  EXPECT_EQ(disk.str(), out.str());
  for (std::size_t i = 0; i < back.entries().size(); ++i) {
    EXPECT_EQ(back.entries()[i].name, builtin_knot_table().entries()[i].name);
    EXPECT_EQ(back.entries()[i].jones, builtin_knot_table().entries()[i].jones);
    EXPECT_EQ(back.entries()[i].determinant, builtin_knot_table().entries()[i].determinant);
  }
  // 14 knots, 12 of them chiral, plus the unknot.
  EXPECT_EQ(back.entries().size(), 27u);
}

TEST(Table, RejectsMalformedRows) {
  std::istringstream two_fields("3_1\t1:1\n");
  EXPECT_EQ(code_of([&] { KnotTable::read_tsv(two_fields); }), ErrorCode::Parse);
  std::istringstream bad_det("3_1\t1:1\t3x\n");
  EXPECT_EQ(code_of([&] { KnotTable::read_tsv(bad_det); }), ErrorCode::Parse);
  std::istringstream bad_poly("3_1\t1;1\t3\n");
  EXPECT_EQ(code_of([&] { KnotTable::read_tsv(bad_poly); }), ErrorCode::Parse);
  std::istringstream comments("# header\n\nunknot\t0:1\t1\n");
  EXPECT_EQ(KnotTable::read_tsv(comments).entries().size(), 1u);
}
