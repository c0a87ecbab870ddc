#include <gtest/gtest.h>

#include <random>
#include <set>

#include "eqdef/gaction.hpp"
#include "test_util.hpp"

using namespace eqdef;
using eqdef::testing::P;

namespace {

Substitution sub(const RingPtr& r, std::vector<std::string> images) {
  Substitution s;
  for (auto& i : images) s.push_back(P(r, i));
  return s;
}

void expect_group_axioms(const GroupAction& g) {
  const auto n = g.order();
  for (std::size_t a = 0; a < n; ++a) {
    std::set<std::size_t> row, col;
    for (std::size_t b = 0; b < n; ++b) {
      row.insert(g.multiply(a, b));
      col.insert(g.multiply(b, a));
    }
    EXPECT_EQ(row.size(), n);
    EXPECT_EQ(col.size(), n);
    EXPECT_EQ(g.multiply(a, g.inverse(a)), g.identity());
    EXPECT_EQ(g.multiply(g.inverse(a), a), g.identity());
  }
}

TEST(CloseGroup, SwapOverQ) {
  auto r = Ring::make(Field::rationals(), {"x", "y"});
  auto g = close_group(r, {sub(r, {"y", "x"})}, 10);
  EXPECT_EQ(g.order(), 2u);
  EXPECT_TRUE(g.is_tame());
  expect_group_axioms(g);
}

TEST(CloseGroup, TranslationInF2) {
  auto r = Ring::make(Field::prime(2), {"x"});
  auto g = close_group(r, {sub(r, {"x + 1"})}, 10);
  EXPECT_EQ(g.order(), 2u);
  EXPECT_FALSE(g.is_tame());
}

TEST(CloseGroup, CyclicOrderFour) {
  auto r = Ring::make(Field::rationals(), {"x", "y"});
  auto g = close_group(r, {sub(r, {"-y", "x"})}, 10);
  EXPECT_EQ(g.order(), 4u);
  expect_group_axioms(g);
}

TEST(CloseGroup, BoundExceeded) {
  auto r = Ring::make(Field::rationals(), {"x"});
  try {
    close_group(r, {sub(r, {"x + 1"})}, 10);
    FAIL() << "expected GroupError";
  } catch (const GroupError& e) {
    EXPECT_NE(std::string(e.what()).find("exceeds bound 10"), std::string::npos);
  }
}

TEST(CloseGroup, RejectsSingularAndForeign) {
  auto r = Ring::make(Field::rationals(), {"x", "y"});
  EXPECT_THROW(close_group(r, {sub(r, {"x", "x"})}, 10), GroupError);
  auto other = Ring::make(Field::rationals(), {"x", "y"});
  EXPECT_THROW(close_group(r, {sub(other, {"y", "x"})}, 10), ContextError);
}

TEST(CloseGroup, RepresentationProperty) {
  auto r = Ring::make(Field::prime(3), {"x", "y"});
  auto g = close_group(r, {sub(r, {"y", "x"}), sub(r, {"-x", "y + 1"})}, 200);
  expect_group_axioms(g);
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto f = eqdef::testing::random_poly(rng, r, 4, 3);
    std::size_t a = rng() % g.order(), b = rng() % g.order();
    EXPECT_EQ(g.apply(g.multiply(a, b), f), g.apply(a, g.apply(b, f)));
  }
}

TEST(Stability, Examples) {
  auto r = Ring::make(Field::rationals(), {"x", "y"});
  auto swap = close_group(r, {sub(r, {"y", "x"})}, 10);
  EXPECT_TRUE(verify_stability(buchberger(r, {P(r, "x*y")}), swap));
  EXPECT_FALSE(verify_stability(buchberger(r, {P(r, "x")}), swap));
  auto flip = close_group(r, {sub(r, {"x", "-y"})}, 10);
  EXPECT_TRUE(verify_stability(buchberger(r, {P(r, "y^2 - x^3")}), flip));
}

TEST(Twist, SwapOfSquares) {
  auto r = Ring::make(Field::rationals(), {"x", "y"});
  auto g = close_group(r, {sub(r, {"y", "x"})}, 10);
  std::vector<Polynomial> gens{P(r, "x^2"), P(r, "y^2")};
  auto gb = buchberger(r, gens);
  auto t = twist_matrices(gens, g, gb);
  PolyMatrix id{{P(r, "1"), P(r, "0")}, {P(r, "0"), P(r, "1")}};
  PolyMatrix sw{{P(r, "0"), P(r, "1")}, {P(r, "1"), P(r, "0")}};
  EXPECT_EQ(t[0], id);
  EXPECT_EQ(t[1], sw);
}

TEST(Twist, FlipOfCusp) {
  auto r = Ring::make(Field::rationals(), {"x", "y"});
  auto g = close_group(r, {sub(r, {"x", "-y"})}, 10);
  std::vector<Polynomial> gens{P(r, "y^2 - x^3")};
  auto t = twist_matrices(gens, g, buchberger(r, gens));
  EXPECT_EQ(t[1], (PolyMatrix{{P(r, "1")}}));
}

// T_{στ} ≡ σ(T_τ) T_σ mod I.
TEST(Twist, CocycleCompatibility) {
  auto r = Ring::make(Field::prime(5), {"x", "y"});
  auto g = close_group(r, {sub(r, {"-y", "x"})}, 10);
  std::vector<Polynomial> gens{P(r, "x^2 + y^2 - 1"), P(r, "x^3*y - x*y^3")};
  auto gb = buchberger(r, gens);
  ASSERT_TRUE(verify_stability(gb, g));
  auto t = twist_matrices(gens, g, gb);
  const std::size_t c = gens.size();
  for (std::size_t s = 0; s < g.order(); ++s)
    for (std::size_t u = 0; u < g.order(); ++u) {
      const auto& lhs = t[g.multiply(s, u)];
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t l = 0; l < c; ++l) {
          Polynomial rhs(r);
          for (std::size_t k = 0; k < c; ++k) rhs += g.apply(s, t[u][j][k]) * t[s][k][l];
          EXPECT_TRUE(gb.normal_form(lhs[j][l] - rhs).is_zero());
        }
    }
}

TEST(Reynolds, Examples) {
  auto r = Ring::make(Field::rationals(), {"x", "y"});
  auto g = close_group(r, {sub(r, {"y", "x"})}, 10);
  EXPECT_EQ(reynolds(P(r, "x"), g), P(r, "1/2*x + 1/2*y"));
  EXPECT_EQ(reynolds(P(r, "x*y"), g), P(r, "x*y"));
  EXPECT_EQ(reynolds(P(r, "x - y"), g), P(r, "0"));
}

TEST(Reynolds, WildOrderRejected) {
  auto r = Ring::make(Field::prime(2), {"x"});
  auto g = close_group(r, {sub(r, {"x + 1"})}, 10);
  try {
    reynolds(P(r, "x"), g);
    FAIL() << "expected ArithmeticError";
  } catch (const ArithmeticError& e) {
    EXPECT_NE(std::string(e.what()).find("order not invertible"), std::string::npos);
  }
}

TEST(Reynolds, ProjectsOntoInvariants) {
  auto r = Ring::make(Field::prime(7), {"x", "y"});
  auto g = close_group(r, {sub(r, {"-y", "x"})}, 10);
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    auto f = eqdef::testing::random_poly(rng, r, 5, 4);
    auto p = reynolds(f, g);
    for (std::size_t s = 0; s < g.order(); ++s) EXPECT_EQ(g.apply(s, p), p);
    EXPECT_EQ(reynolds(p, g), p);
  }
}

}  // namespace
