#include <gtest/gtest.h>

#include <random>

#include "eqdef/parse.hpp"
#include "test_util.hpp"

using namespace eqdef;
using eqdef::testing::P;
using eqdef::testing::random_poly;

namespace {

RingPtr qxy() { return Ring::make(Field::rationals(), {"x", "y"}); }

TEST(Scalar, RationalLowestTerms) {
  Scalar a(Field::rationals(), mpq_class(6, -4));
  EXPECT_EQ(a.str(), "-3/2");
  EXPECT_EQ((a * Scalar(Field::rationals(), 2)).str(), "-3");
}

TEST(Scalar, PrimeFieldResidues) {
  auto f5 = Field::prime(5);
  EXPECT_EQ(Scalar(f5, -1).residue(), 4u);
  EXPECT_EQ(Scalar(f5, mpq_class(1, 2)).residue(), 3u);
  EXPECT_EQ((Scalar(f5, 3) * Scalar(f5, 3).inverse()).residue(), 1u);
  EXPECT_THROW(Field::prime(4), std::invalid_argument);
  EXPECT_THROW(Scalar(f5, 0).inverse(), ArithmeticError);
  EXPECT_THROW(Scalar(f5, 1) + Scalar(Field::prime(7), 1), ContextError);
}

TEST(Substitute, Examples) {
  auto r = qxy();
  auto f = P(r, "y^2 - x^3");
  EXPECT_EQ(substitute(f, {P(r, "x"), P(r, "-y")}), f);
  EXPECT_EQ(substitute(P(r, "x*y"), {P(r, "y"), P(r, "x")}), P(r, "x*y"));
  auto f2 = Ring::make(Field::prime(2), {"x"});
  EXPECT_EQ(substitute(P(f2, "x^2"), {P(f2, "x + 1")}), P(f2, "x^2 + 1"));
}

TEST(Substitute, ContextMismatch) {
  auto r = qxy();
  auto other = qxy();
  EXPECT_THROW(substitute(P(r, "x"), {P(r, "x")}), ContextError);
  EXPECT_THROW(substitute(P(r, "x"), {P(r, "x"), P(other, "y")}), ContextError);
  EXPECT_THROW(P(r, "x") + P(other, "x"), ContextError);
}

TEST(DegreeSlice, Examples) {
  auto r = qxy();
  EXPECT_EQ(degree_slice(P(r, "y^2 - x^3"), 2), P(r, "y^2"));
  EXPECT_TRUE(degree_slice(P(r, "y^2 - x^3"), 0).is_zero());
  EXPECT_EQ(degree_slice(P(r, "1 + x + x^2"), 1), P(r, "x"));
}

TEST(Render, Examples) {
  auto r = qxy();
  EXPECT_EQ(render(P(r, "y^2 - x^3")), "-x^3 + y^2");
  EXPECT_EQ(render(Polynomial(r)), "0");
  auto f2 = Ring::make(Field::prime(2), {"x"});
  EXPECT_EQ(render(P(f2, "x + 1")), "x + 1");
  EXPECT_EQ(render(P(r, "3/2 x y - 1/3")), "3/2*x*y - 1/3");
}

TEST(Parse, Errors) {
  auto r = qxy();
  EXPECT_THROW(P(r, "x + z"), ParseError);
  EXPECT_THROW(P(r, "x +"), ParseError);
  EXPECT_THROW(P(r, "1/0"), ParseError);
  try {
    parse_polynomial(r, "x + q", 3, 10);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 15u);
  }
  auto f3 = Ring::make(Field::prime(3), {"x"});
  EXPECT_THROW(P(f3, "x/3"), ParseError);
  EXPECT_EQ(P(f3, "1/2 x"), P(f3, "2x"));
}

TEST(Lex, Order) {
  auto r = Ring::make(Field::rationals(), {"x", "y"}, MonomialOrder::lex(2));
  // y is the largest variable
  EXPECT_EQ(render(P(r, "x^5 + y")), "y + x^5");
}

class RingAxioms : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RingAxioms, HoldExactly) {
  auto r = GetParam() == 0 ? Ring::make(Field::rationals(), {"x", "y", "z"})
                           : Ring::make(Field::prime(GetParam()), {"x", "y", "z"});
  std::mt19937 rng(17 + GetParam());
  for (int i = 0; i < 40; ++i) {
    auto a = random_poly(rng, r, 4, 3), b = random_poly(rng, r, 4, 3), c = random_poly(rng, r, 4, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(parse_polynomial(r, render(a)), a);
    Polynomial sum(r);
    for (long d = 0; d <= a.degree(); ++d) sum += degree_slice(a, d);
    EXPECT_EQ(sum, a);
    // substitution is a homomorphism and σ = (x,y,z) ↦ (y, -x, z+1) is invertible
    std::vector<Polynomial> s{P(r, "y"), P(r, "-x"), P(r, "z + 1")};
    std::vector<Polynomial> sinv{P(r, "-y"), P(r, "x"), P(r, "z - 1")};
    EXPECT_EQ(substitute(a * b, s), substitute(a, s) * substitute(b, s));
    EXPECT_EQ(substitute(substitute(a, s), sinv), a);
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, RingAxioms, ::testing::Values(0, 2, 3, 101));

}  // namespace
