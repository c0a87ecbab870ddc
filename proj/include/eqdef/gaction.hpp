#pragma once

// Finite groups realized as affine substitutions of the polynomial ring.
//
// Elements act on functions on the left: (στ)(f) = σ(τ(f)), where σ(f) is f
// with every x_i replaced by the image σ(x_i).

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqdef/groebner.hpp"
#include "eqdef/linalg.hpp"

namespace eqdef {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-variable images of one substitution.
using Substitution = std::vector<Polynomial>;

inline Substitution identity_substitution(const RingPtr& ring) {
  Substitution s;
  for (std::size_t i = 0; i < ring->nvars(); ++i) s.push_back(Polynomial::variable(ring, i));
  return s;
}

/// (a ∘ b): first b, then a, on functions: x_i ↦ b_i(a-images).
inline Substitution compose(const Substitution& a, const Substitution& b) {
  Substitution r;
  for (const auto& bi : b) r.push_back(substitute(bi, a));
  return r;
}

/// The linear part A with σ(x_i) = Σ_k A[i][k] x_k + const.
inline Matrix linear_part(const RingPtr& ring, const Substitution& s) {
  const std::size_t n = ring->nvars();
  Matrix a(ring->field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : s[i].terms()) {
      if (t.mono.degree() > 1) throw GroupError("substitution is not affine");
      for (std::size_t k = 0; k < n; ++k)
        if (t.mono[k] == 1) a(i, k) = t.coeff;
    }
  return a;
}

class GroupAction {
 public:
  GroupAction() = default;

  const RingPtr& ring() const { return ring_; }
  std::size_t order() const { return elems_.size(); }
  std::size_t identity() const { return 0; }
  const Substitution& element(std::size_t s) const { return elems_[s]; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return mul_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  const std::vector<std::size_t>& generators() const { return gens_; }
  const std::vector<std::vector<std::size_t>>& table() const { return mul_; }

  /// |G| is a unit of k.
  bool is_tame() const { return ring_->field().invertible(order()); }

  Polynomial apply(std::size_t s, const Polynomial& f) const {
    if (ring_->nvars() == 0) return f;
    return substitute(f, elems_[s]);
  }

  /// Same abstract group acting on another ring through `images`, which must
  /// be indexed like this group's elements and respect its table.
  GroupAction transported(RingPtr ring, std::vector<Substitution> images) const {
    GroupAction g = *this;
    g.ring_ = std::move(ring);
    g.elems_ = std::move(images);
    return g;
  }

  friend GroupAction close_group(const RingPtr& ring, const std::vector<Substitution>& generators, std::size_t bound);

 private:
  RingPtr ring_;
  std::vector<Substitution> elems_;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
  std::vector<std::size_t> gens_;
};

namespace detail {
inline std::string substitution_key(const Substitution& s) {
  std::string k;
  for (const auto& p : s) k += render(p) + ";";
  return k;
}
}  // namespace detail

/// Closure of the generators under composition, identity first, then in
/// breadth-first discovery order.
inline GroupAction close_group(const RingPtr& ring, const std::vector<Substitution>& generators, std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("group bound must be at least 1");
  const std::size_t n = ring->nvars();
  for (const auto& g : generators) {
    if (g.size() != n) throw ContextError("substitution must give an image for every variable");
    for (const auto& p : g)
      if (p.ring() != ring) throw ContextError("substitution image in a foreign context");
    Matrix a = linear_part(ring, g);
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(a.row(i));
    if (rank_of(ring->field(), n, rows) != n) throw GroupError("generator is not invertible");
  }
  GroupAction G;
  G.ring_ = ring;
  std::map<std::string, std::size_t> index;
  auto add = [&](Substitution s) -> std::size_t {
    auto key = detail::substitution_key(s);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (G.elems_.size() >= bound) throw GroupError("group closure exceeds bound " + std::to_string(bound));
    index.emplace(key, G.elems_.size());
    G.elems_.push_back(std::move(s));
    return G.elems_.size() - 1;
  };
  add(identity_substitution(ring));
  for (const auto& g : generators) G.gens_.push_back(add(g));
  for (std::size_t i = 0; i < G.elems_.size(); ++i)
    for (std::size_t gi = 0; gi < generators.size(); ++gi) add(compose(generators[gi], G.elems_[i]));

  const std::size_t order = G.elems_.size();
  G.mul_.assign(order, std::vector<std::size_t>(order, 0));
  G.inv_.assign(order, 0);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      auto it = index.find(detail::substitution_key(compose(G.elems_[a], G.elems_[b])));
      if (it == index.end()) throw GroupError("composition left the closure");
      G.mul_[a][b] = it->second;
      if (it->second == 0) G.inv_[a] = b;
    }
  return G;
}

/// σ(I) ⊂ I for every element σ.
inline bool verify_stability(const GroebnerBasis& gb, const GroupAction& g) {
  for (std::size_t s = 0; s < g.order(); ++s)
    for (const auto& f : gb.generators())
      if (!gb.normal_form(g.apply(s, f)).is_zero()) return false;
  return true;
}

/// Per element σ, a c × c matrix with σ(f_j) = Σ_l T_σ[j][l] f_l, entries
/// reduced mod I.
struct TwistMatrices {
  std::vector<PolyMatrix> per_element;

  const PolyMatrix& operator[](std::size_t s) const { return per_element[s]; }
};

inline TwistMatrices twist_matrices(const std::vector<Polynomial>& gens, const GroupAction& g, const GroebnerBasis& gb) {
  const RingPtr& ring = g.ring();
  std::vector<FreeModuleElement> cols;
  for (const auto& f : gens) cols.push_back({f});
  SubmoduleLift lift(ring, 1, cols);
  TwistMatrices t;
  for (std::size_t s = 0; s < g.order(); ++s) {
    PolyMatrix m;
    for (const auto& f : gens) {
      auto a = lift.lift({g.apply(s, f)});
      if (!a) throw GroupError("twist division failed: the ideal is not stable");
      std::vector<Polynomial> row;
      for (auto& x : *a) row.push_back(gb.normal_form(x));
      m.push_back(std::move(row));
    }
    t.per_element.push_back(std::move(m));
  }
  return t;
}

/// Averaging projection onto invariants; requires |G| invertible in k.
inline Polynomial reynolds(const Polynomial& f, const GroupAction& g) {
  const Field& k = g.ring()->field();
  if (!k.invertible(g.order())) throw ArithmeticError("order not invertible: group order " + std::to_string(g.order()) + " vanishes in " + k.name());
  Polynomial sum(g.ring());
  for (std::size_t s = 0; s < g.order(); ++s) sum += g.apply(s, f);
  return sum * Scalar(k, static_cast<long>(g.order())).inverse();
}

}  // namespace eqdef
