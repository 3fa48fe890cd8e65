#include <gtest/gtest.h>

#include <random>

#include "gridatlas/laurent.hpp"

using gridatlas::LaurentPolynomial;

namespace {

LaurentPolynomial random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 5), exp(-6, 6), coef(-4, 4);
  LaurentPolynomial p;
  for (int i = len(rng); i > 0; --i) p += LaurentPolynomial::monomial(coef(rng), exp(rng));
  return p;
}

}  // namespace

TEST(Laurent, ZeroAndConstants) {
  LaurentPolynomial zero;
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.to_string("t"), "0");
  EXPECT_EQ(LaurentPolynomial(0), zero);
  EXPECT_EQ(LaurentPolynomial::monomial(0, 5), zero);
  EXPECT_EQ(LaurentPolynomial(3).to_string("z"), "3");
}

TEST(Laurent, Formatting) {
  auto rh_trefoil = LaurentPolynomial::from_terms({{1, 1}, {3, 1}, {4, -1}});
  EXPECT_EQ(rh_trefoil.to_string("t"), "t+t^3-t^4");
  EXPECT_EQ(rh_trefoil.inverted().to_string("t"), "-t^-4+t^-3+t^-1");
  EXPECT_EQ(LaurentPolynomial::from_terms({{0, 2}, {2, 1}}).to_string("z"), "2+z^2");
  EXPECT_EQ(LaurentPolynomial::from_terms({{-1, -3}}).to_string("z"), "-3z^-1");
}

TEST(Laurent, Degrees) {
  auto p = LaurentPolynomial::from_terms({{-2, 1}, {5, 7}});
  EXPECT_EQ(p.min_degree(), -2);
  EXPECT_EQ(p.max_degree(), 5);
  EXPECT_EQ(p.coefficient(5), 7);
  EXPECT_EQ(p.coefficient(0), 0);
  EXPECT_EQ(p.coefficient(100), 0);
}

TEST(Laurent, CancellationTrims) {
  auto p = LaurentPolynomial::monomial(1, 3) + LaurentPolynomial::monomial(2, 0);
  auto q = p - LaurentPolynomial::monomial(1, 3);
  EXPECT_EQ(q.max_degree(), 0);
  EXPECT_EQ(q, LaurentPolynomial(2));
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Laurent, RingAxiomsOnRandomPolynomials) {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, LaurentPolynomial());
    EXPECT_EQ(a.inverted().inverted(), a);
    EXPECT_EQ((a * b).inverted(), a.inverted() * b.inverted());
    EXPECT_EQ(a.shifted(3).shifted(-3), a);
    EXPECT_EQ(a.shifted(2), a * LaurentPolynomial::monomial(1, 2));
    EXPECT_EQ(LaurentPolynomial::from_pairs(a.to_pairs()), a);
    EXPECT_EQ((a * b).evaluate(1), a.evaluate(1) * b.evaluate(1));
    EXPECT_EQ((a * b).evaluate(-1), a.evaluate(-1) * b.evaluate(-1));
  }
}

TEST(Laurent, ExactDivision) {
  std::mt19937 rng(11);
  auto divisor = LaurentPolynomial(1) - LaurentPolynomial::monomial(1, 2);
  for (int i = 0; i < 100; ++i) {
    auto q = random_poly(rng);
    EXPECT_EQ((q * divisor).divided_exactly_by(divisor), q);
  }
  EXPECT_THROW(LaurentPolynomial::monomial(1, 1).divided_exactly_by(divisor), std::domain_error);
  EXPECT_THROW(LaurentPolynomial(1).divided_exactly_by(LaurentPolynomial()), std::domain_error);
  EXPECT_THROW(LaurentPolynomial(4).divided_exactly_by(LaurentPolynomial(2)), std::domain_error);
}

TEST(Laurent, SubstitutedPower) {
  auto p = LaurentPolynomial::from_terms({{-1, 2}, {3, 1}});
  EXPECT_EQ(p.substituted_power(2), LaurentPolynomial::from_terms({{-2, 2}, {6, 1}}));
  EXPECT_EQ(p.substituted_power(-1), p.inverted());
  EXPECT_THROW((void)p.substituted_power(0), std::invalid_argument);
}

TEST(Laurent, Evaluate) {
  auto p = LaurentPolynomial::from_terms({{0, 1}, {2, 3}});
  EXPECT_EQ(p.evaluate(2), 13);
  EXPECT_THROW((void)LaurentPolynomial::monomial(1, -1).evaluate(2), std::domain_error);
  EXPECT_EQ(LaurentPolynomial::monomial(5, -3).evaluate(-1), -5);
}

TEST(Laurent, FromPairsRejectsGarbage) {
  EXPECT_TRUE(LaurentPolynomial::from_pairs("").is_zero());
  EXPECT_ANY_THROW((void)LaurentPolynomial::from_pairs("1:2x"));
  EXPECT_ANY_THROW((void)LaurentPolynomial::from_pairs("12"));
}
