#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "eqdef/groebner.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace eqdef;
using eqdef::testing::P;
using eqdef::testing::random_poly;

namespace {

RingPtr qxy() { return Ring::make(Field::rationals(), {"x", "y"}); }

TEST(Buchberger, SingleGenerator) {
  auto r = qxy();
  auto gb = buchberger(r, {P(r, "y^2 - x^3")});
  ASSERT_EQ(gb.generators().size(), 1u);
  EXPECT_EQ(gb.generators()[0], P(r, "x^3 - y^2"));
}

TEST(Buchberger, UnitIdeal) {
  // x = x(xy - 1) - y x^2 ∈ I, so 1 = x·y - (xy - 1) ∈ I
  auto r = qxy();
  auto x = P(r, "x"), y = P(r, "y");
  EXPECT_EQ(x * P(r, "x*y - 1") - y * P(r, "x^2"), -x);
  auto gb = buchberger(r, {P(r, "x*y - 1"), P(r, "x^2")});
  ASSERT_EQ(gb.generators().size(), 1u);
  EXPECT_EQ(gb.generators()[0], P(r, "1"));
  EXPECT_TRUE(gb.is_unit());
}

TEST(Buchberger, LinearElimination) {
  auto r = qxy();
  auto gb = buchberger(r, {P(r, "x + y"), P(r, "x - y")});
  std::vector<Polynomial> expect{P(r, "x"), P(r, "y")};
  EXPECT_EQ(gb.generators(), expect);
}

TEST(Buchberger, DeterministicUnderPermutation) {
  auto r = Ring::make(Field::rationals(), {"x", "y", "z"});
  std::vector<Polynomial> g{P(r, "x^2 - y*z"), P(r, "y^2 - x*z"), P(r, "z^2 - x*y + x")};
  auto a = buchberger(r, g).generators();
  std::reverse(g.begin(), g.end());
  EXPECT_EQ(buchberger(r, g).generators(), a);
}

TEST(NormalForm, Examples) {
  auto lexr = Ring::make(Field::rationals(), {"x", "y"}, MonomialOrder::lex(2));
  auto gb = buchberger(lexr, {P(lexr, "y^2 - x^3")});
  EXPECT_EQ(normal_form(P(lexr, "y^2"), gb), P(lexr, "x^3"));
  EXPECT_TRUE(normal_form(P(lexr, "y^2 - x^3"), gb).is_zero());
  auto r = qxy();
  EXPECT_EQ(normal_form(P(r, "x"), buchberger(r, {P(r, "y")})), P(r, "x"));
  // under grevlex x^3 leads, so y^2 is already reduced
  EXPECT_EQ(normal_form(P(r, "y^2"), buchberger(r, {P(r, "y^2 - x^3")})), P(r, "y^2"));
}

TEST(NormalForm, OrderChangeBuildsNewContext) {
  auto r = qxy();
  auto gb = buchberger(r, {P(r, "y^2 - x^3")}, MonomialOrder::lex(2));
  EXPECT_NE(gb.ring(), r);
  EXPECT_EQ(gb.order().kind, OrderKind::lex);
}

TEST(ModuleKernel, KoszulSyzygy) {
  auto r = qxy();
  auto zero = buchberger(r, {});
  auto k = module_kernel({{P(r, "x"), P(r, "y")}}, 2, zero);
  ASSERT_EQ(k.size(), 1u);
  auto v = k[0];
  if (v[0].leading_coeff().is_negative()) v = Scalar(r->field(), -1) * v;
  EXPECT_EQ(v, (FreeModuleElement{P(r, "y"), P(r, "-x")}));
}

TEST(ModuleKernel, UnitEntry) {
  auto r = qxy();
  EXPECT_TRUE(module_kernel({{P(r, "1")}}, 1, buchberger(r, {})).empty());
}

TEST(ModuleKernel, CuspJacobian) {
  auto r = qxy();
  auto gb = buchberger(r, {P(r, "y^2 - x^3")});
  PolyMatrix m{{P(r, "-3x^2"), P(r, "2y")}};
  auto k = module_kernel(m, 2, gb);
  for (const auto& v : k) EXPECT_TRUE(gb.normal_form(m[0][0] * v[0] + m[0][1] * v[1]).is_zero());
  // -3x^2·2x + 2y·3y = 6(y^2 - x^3)
  EXPECT_TRUE(gb.normal_form(P(r, "-3x^2") * P(r, "2x") + P(r, "2y") * P(r, "3y")).is_zero());
  std::vector<FreeModuleElement> sub = k;
  for (std::size_t j = 0; j < 2; ++j)
    for (const auto& g : gb.generators()) {
      auto e = zero_element(r, 2);
      e[j] = g;
      sub.push_back(e);
    }
  auto mgb = ModuleGroebnerBasis::compute(r, 2, sub);
  EXPECT_TRUE(mgb.contains({P(r, "2x"), P(r, "3y")}));
  EXPECT_TRUE(mgb.contains({P(r, "2y"), P(r, "3x^2")}));
}

TEST(QuotientBasis, CuspTangentCokernel) {
  auto r = qxy();
  ModulePresentation m{1, {{P(r, "3x^2")}, {P(r, "2y")}}, buchberger(r, {P(r, "y^2 - x^3")})};
  auto q = quotient_basis(m, 10);
  ASSERT_TRUE(q.finite);
  ASSERT_EQ(q.dimension(), 2u);
  EXPECT_EQ(q.basis[0].mono, Monomial(std::vector<std::uint32_t>{0, 0}));
  EXPECT_EQ(q.basis[1].mono, Monomial(std::vector<std::uint32_t>{1, 0}));
}

TEST(QuotientBasis, NodeAndFreeModule) {
  auto r = qxy();
  ModulePresentation node{1, {{P(r, "y")}, {P(r, "x")}}, buchberger(r, {P(r, "x*y")})};
  auto q = quotient_basis(node, 10);
  EXPECT_TRUE(q.finite);
  EXPECT_EQ(q.dimension(), 1u);

  auto rx = Ring::make(Field::rationals(), {"x"});
  ModulePresentation line{1, {{Polynomial(rx)}}, buchberger(rx, {})};
  auto ql = quotient_basis(line, 5);
  EXPECT_FALSE(ql.finite);
  EXPECT_EQ(ql.bound, 5);
  EXPECT_EQ(ql.dimension(), 6u);
}

TEST(QuotientBasis, InvariantUnderGeneratorPermutation) {
  auto r = Ring::make(Field::prime(3), {"x", "y", "z"});
  std::vector<Polynomial> g{P(r, "x*y - z^2"), P(r, "x^3 + y"), P(r, "z^3 - x")};
  ModulePresentation a{1, {}, buchberger(r, g)};
  std::reverse(g.begin(), g.end());
  ModulePresentation b{1, {}, buchberger(r, g)};
  EXPECT_EQ(quotient_basis(a, 4).dimension(), quotient_basis(b, 4).dimension());
}

TEST(RegularSequence, Examples) {
  auto r = qxy();
  auto a = is_regular_sequence(r, {P(r, "y^2 - x^3")});
  EXPECT_TRUE(a.regular);
  EXPECT_EQ(a.dimension, 1);
  auto b = is_regular_sequence(r, {P(r, "x"), P(r, "x")});
  EXPECT_FALSE(b.regular);
  EXPECT_EQ(b.dimension, 1);
  EXPECT_TRUE(is_regular_sequence(r, {P(r, "x*y")}).regular);
  EXPECT_FALSE(is_regular_sequence(r, {P(r, "x*y - 1"), P(r, "x^2")}).regular);
}

TEST(Lift, CofactorsReproduceMember) {
  auto r = qxy();
  std::vector<Polynomial> g{P(r, "x^2 + y"), P(r, "x*y - 1")};
  auto f_member = P(r, "x") * g[0] + P(r, "2x + 3") * g[1];
  auto a = lift_ideal_member(f_member, g);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ((*a)[0] * g[0] + (*a)[1] * g[1], f_member);
}

// Every generator reduces to zero, and normal-form membership agrees with
// degree-bounded linear algebra.
TEST(Membership, AgreesWithLinearAlgebraOracle) {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::uint64_t p = trial % 2 ? 0 : 3;
    std::size_t nv = 1 + trial % 3;
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(nv);
    auto r = p ? Ring::make(Field::prime(p), names) : Ring::make(Field::rationals(), names);
    std::size_t ng = 1 + rng() % 3;
    std::vector<Polynomial> g;
    for (std::size_t i = 0; i < ng; ++i) g.push_back(random_poly(rng, r, 3, 2 + static_cast<int>(rng() % 3), 3));
    auto gb = buchberger(r, g);
    for (const auto& x : g) EXPECT_TRUE(gb.normal_form(x).is_zero());
    for (int k = 0; k < 4; ++k) {
      Polynomial f(r);
      for (const auto& x : g) f += random_poly(rng, r, 2, 1, 3) * x;
      EXPECT_TRUE(gb.normal_form(f).is_zero());
      auto h = random_poly(rng, r, 3, 4, 3);
      bool nf = gb.normal_form(h).is_zero();
      bool brute = oracle::member_up_to(h, g, 6);
      if (brute) EXPECT_TRUE(nf);
      if (nf && !gb.is_unit()) EXPECT_TRUE(oracle::member_up_to(h, g, 8));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 200);
}

}  // namespace
