#pragma once

// Named example problems shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "eqdef/deform.hpp"
#include "test_util.hpp"

namespace eqdef::testing {

inline Substitution sub(const RingPtr& r, const std::vector<std::string>& images) {
  Substitution s;
  for (const auto& i : images) s.push_back(P(r, i));
  return s;
}

struct Problem {
  std::string name;
  AffinePresentation p;
  GroupAction g;
};

inline Problem make_problem(std::string name, Field k, std::vector<std::string> vars, std::vector<std::string> ideal,
                            std::vector<std::vector<std::string>> gens) {
  auto r = Ring::make(k, std::move(vars));
  std::vector<Polynomial> f;
  for (const auto& s : ideal) f.push_back(P(r, s));
  std::vector<Substitution> g;
  for (const auto& s : gens) g.push_back(sub(r, s));
  return {std::move(name), AffinePresentation::make(r, f), close_group(r, g, 64)};
}

/// y^2 = x^3 with y ↦ −y.
inline Problem cusp(Field k = Field::rationals()) {
  return make_problem("cusp", k, {"x", "y"}, {"y^2 - x^3"}, {{"x", "-y"}});
}

/// xy = 0 with x ↔ y.
inline Problem node(Field k = Field::rationals()) { return make_problem("node", k, {"x", "y"}, {"x*y"}, {{"y", "x"}}); }

/// xy = z^3 with x ↔ y.
inline Problem a2_surface(Field k = Field::rationals()) {
  return make_problem("A2", k, {"x", "y", "z"}, {"x*y - z^3"}, {{"y", "x", "z"}});
}

/// The affine line over F2 with x ↦ x + 1.
inline Problem line_translation() { return make_problem("line", Field::prime(2), {"x"}, {}, {{"x + 1"}}); }

}  // namespace eqdef::testing
