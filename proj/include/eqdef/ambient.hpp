#pragma once

// Equivariant ambient embeddings and the modules built from them: Kähler
// differentials, derivations and the normal module.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqdef/cohomology.hpp"
#include "eqdef/gaction.hpp"
#include "eqdef/groebner.hpp"

namespace eqdef {

class PresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ∂f/∂x_v.
inline Polynomial derivative(const Polynomial& f, std::size_t v) {
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    if (t.mono[v] == 0) continue;
    Monomial m = t.mono;
    Scalar c = t.coeff * Scalar(f.ring()->field(), static_cast<long>(m.exp[v]));
    m.exp[v] -= 1;
    if (!c.is_zero()) ts.push_back({std::move(m), c});
  }
  return Polynomial::from_terms(f.ring(), std::move(ts));
}

/// B = k[x] / (f₁..f_c) with the f_j a regular sequence.
struct AffinePresentation {
  RingPtr ring;
  std::vector<Polynomial> gens;
  GroebnerBasis gb;
  RegularSequenceCertificate certificate;

  static AffinePresentation make(const RingPtr& ring, std::vector<Polynomial> gens) {
    AffinePresentation p;
    p.ring = ring;
    for (const auto& g : gens)
      if (g.ring() != ring) throw ContextError("ideal generator in a foreign context");
    p.gens = std::move(gens);
    p.gb = buchberger(ring, p.gens);
    p.certificate = is_regular_sequence(ring, p.gens);
    if (!p.certificate.regular)
      throw PresentationError("generators are not a regular sequence (dimension " + std::to_string(p.certificate.dimension) +
                              ", expected " + std::to_string(static_cast<long>(ring->nvars()) - static_cast<long>(p.gens.size())) + ")");
    return p;
  }

  std::size_t nvars() const { return ring->nvars(); }
  std::size_t codim() const { return gens.size(); }
};

enum class AmbientKind { small, regular_representation };

inline const char* to_string(AmbientKind k) { return k == AmbientKind::small ? "small" : "regular"; }

/// An equivariant closed immersion X₀ → Y with Y affine space.
struct EquivariantAmbient {
  AmbientKind kind = AmbientKind::small;
  RingPtr base;
  RingPtr ring;
  std::vector<Polynomial> gens;  // F_1..F_C
  GroebnerBasis gb;
  RegularSequenceCertificate certificate;
  GroupAction action;
  std::vector<Polynomial> evaluation;   // φ′(X_v) in the base ring
  std::vector<Polynomial> base_images;  // x_i ↦ X_{i,e}

  std::size_t codim() const { return gens.size(); }
  std::size_t nvars() const { return ring->nvars(); }

  Polynomial to_ambient(const Polynomial& f) const {
    if (base->nvars() == 0) return Polynomial::constant(ring, f.constant_term());
    return substitute(f, base_images);
  }
  Polynomial reduce(const Polynomial& f) const { return gb.normal_form(f); }
  FreeModuleElement reduce(const FreeModuleElement& v) const {
    FreeModuleElement out;
    for (const auto& x : v) out.push_back(gb.normal_form(x));
    return out;
  }
};

/// The presentation itself, with G acting by its given substitutions.
inline EquivariantAmbient small_ambient(const AffinePresentation& p, const GroupAction& g) {
  if (g.ring() != p.ring) throw ContextError("group acts on a different ring");
  if (!verify_stability(p.gb, g)) throw GroupError("ideal is not stable under the group");
  EquivariantAmbient a;
  a.kind = AmbientKind::small;
  a.base = a.ring = p.ring;
  a.gens = p.gens;
  a.gb = p.gb;
  a.certificate = p.certificate;
  a.action = g;
  a.evaluation = a.base_images = identity_substitution(p.ring);
  return a;
}

/// Name of X_{i,σ}: the base name for σ = e, else name_g<σ>.
inline std::string regular_rep_name(const std::string& base, std::size_t s) {
  return s == 0 ? base : base + "_g" + std::to_string(s);
}

/// Variables X_{i,σ} with φ′(X_{i,σ}) = σ(x̄_i) and σ′(X_{i,τ}) = X_{i,σ′τ}.
/// The X_{·,e} are declared first so that X_{i,σ} − s_{i,σ}(X_{·,e}) leads
/// with X_{i,σ}.
inline EquivariantAmbient regular_rep_embedding(const AffinePresentation& p, const GroupAction& g) {
  if (g.ring() != p.ring) throw ContextError("group acts on a different ring");
  if (!verify_stability(p.gb, g)) throw GroupError("ideal is not stable under the group");
  const std::size_t n = p.nvars(), order = g.order();
  std::vector<std::string> names;
  for (std::size_t s = 0; s < order; ++s)
    for (std::size_t i = 0; i < n; ++i) names.push_back(regular_rep_name(p.ring->names()[i], s));
  for (std::size_t a = 0; a < names.size(); ++a)
    for (std::size_t b = a + 1; b < names.size(); ++b)
      if (names[a] == names[b]) throw ContextError("variable name clash in regular-representation ambient: " + names[a]);
  EquivariantAmbient a;
  a.kind = AmbientKind::regular_representation;
  a.base = p.ring;
  a.ring = Ring::make(p.ring->field(), names);
  auto var = [&](std::size_t i, std::size_t s) { return Polynomial::variable(a.ring, s * n + i); };
  for (std::size_t i = 0; i < n; ++i) a.base_images.push_back(var(i, 0));
  for (const auto& f : p.gens) a.gens.push_back(a.to_ambient(f));
  for (std::size_t s = 0; s < order; ++s)
    for (std::size_t i = 0; i < n; ++i) {
      auto rep = p.gb.normal_form(g.element(s)[i]);
      a.evaluation.push_back(rep);
      if (s != 0) a.gens.push_back(var(i, s) - a.to_ambient(rep));
    }
  a.gb = buchberger(a.ring, a.gens);
  a.certificate = is_regular_sequence(a.ring, a.gens);
  if (!a.certificate.regular) throw PresentationError("regular-representation generators are not a regular sequence");
  std::vector<Substitution> images;
  for (std::size_t s = 0; s < order; ++s) {
    Substitution img;
    for (std::size_t t = 0; t < order; ++t)
      for (std::size_t i = 0; i < n; ++i) img.push_back(var(i, g.multiply(s, t)));
    images.push_back(std::move(img));
  }
  a.action = g.transported(a.ring, std::move(images));
  return a;
}

/// Ω_{B/k} = B^n (basis dx_i) modulo the Jacobian columns of the f_j.
inline ModulePresentation kaehler_presentation(const AffinePresentation& p) {
  ModulePresentation m;
  m.rank = p.nvars();
  m.base = p.gb;
  for (const auto& f : p.gens) {
    FreeModuleElement col;
    for (std::size_t i = 0; i < p.nvars(); ++i) col.push_back(derivative(f, i));
    m.relations.push_back(std::move(col));
  }
  return m;
}

/// C × N matrix ∂F_j/∂X_i.
inline PolyMatrix jacobian(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  PolyMatrix j;
  for (const auto& f : gens) {
    std::vector<Polynomial> row;
    for (std::size_t i = 0; i < ring->nvars(); ++i) row.push_back(derivative(f, i));
    j.push_back(std::move(row));
  }
  return j;
}

/// Hom(I/I², B) ≅ B^C on the dual basis F_j*, with (σψ)_j = σ(ψ(σ⁻¹ F_j)).
class NormalModule {
 public:
  NormalModule() = default;
  explicit NormalModule(EquivariantAmbient amb)
      : amb_(std::make_shared<const EquivariantAmbient>(std::move(amb))),
        twist_(twist_matrices(amb_->gens, amb_->action, amb_->gb)) {}

  std::size_t rank() const { return amb_->codim(); }
  const EquivariantAmbient& ambient() const { return *amb_; }
  const TwistMatrices& twist() const { return twist_; }

  FreeModuleElement act(std::size_t s, const FreeModuleElement& psi) const {
    const auto& g = amb_->action;
    const auto& t = twist_[g.inverse(s)];
    FreeModuleElement out;
    for (std::size_t j = 0; j < rank(); ++j) {
      Polynomial sum(amb_->ring);
      for (std::size_t l = 0; l < rank(); ++l)
        if (!t[j][l].is_zero() && !psi[l].is_zero()) sum += t[j][l] * psi[l];
      out.push_back(amb_->reduce(g.apply(s, sum)));
    }
    return out;
  }

  ModuleAction action() const {
    return [self = *this](std::size_t s, const FreeModuleElement& v) { return self.act(s, v); };
  }

  /// The G-stable slice spanned by standard elements of degree ≤ d.
  GModuleSlice slice(long d) const {
    return GModuleSlice::span(amb_->action, amb_->ring, rank(), action(), standard_elements(amb_->gb, rank(), d), d);
  }

 private:
  std::shared_ptr<const EquivariantAmbient> amb_;
  TwistMatrices twist_;
};

inline NormalModule normal_module(const EquivariantAmbient& amb) { return NormalModule(amb); }

/// Ambient derivations X_i ↦ D_i with values in B, acted on by
/// (σD)_i = σ(Σ_k A^{σ⁻¹}_{ik} D_k) where σ(X_i) = Σ_k A^σ_{ik} X_k + b.
class DerivationModule {
 public:
  DerivationModule() = default;
  explicit DerivationModule(EquivariantAmbient amb)
      : amb_(std::make_shared<const EquivariantAmbient>(std::move(amb))), jac_(jacobian(amb_->ring, amb_->gens)) {
    for (std::size_t s = 0; s < amb_->action.order(); ++s)
      linear_.push_back(linear_part(amb_->ring, amb_->action.element(s)));
  }

  const EquivariantAmbient& ambient() const { return *amb_; }

  std::size_t rank() const { return amb_->nvars(); }
  const PolyMatrix& jacobian_matrix() const { return jac_; }

  FreeModuleElement act(std::size_t s, const FreeModuleElement& d) const {
    const auto& g = amb_->action;
    const auto& a = linear_[g.inverse(s)];
    FreeModuleElement out;
    for (std::size_t i = 0; i < rank(); ++i) {
      Polynomial sum(amb_->ring);
      for (std::size_t k = 0; k < rank(); ++k)
        if (!a(i, k).is_zero() && !d[k].is_zero()) sum += d[k] * a(i, k);
      out.push_back(amb_->reduce(g.apply(s, sum)));
    }
    return out;
  }

  ModuleAction action() const {
    return [self = *this](std::size_t s, const FreeModuleElement& v) { return self.act(s, v); };
  }

  /// (D(F_j))_j in the normal module.
  FreeModuleElement apply_jacobian(const FreeModuleElement& d) const {
    FreeModuleElement out;
    for (const auto& row : jac_) {
      Polynomial sum(amb_->ring);
      for (std::size_t i = 0; i < rank(); ++i)
        if (!row[i].is_zero() && !d[i].is_zero()) sum += row[i] * d[i];
      out.push_back(amb_->reduce(sum));
    }
    return out;
  }

  /// G-stable slice of all ambient derivations of degree ≤ d.
  GModuleSlice slice(long d) const {
    return GModuleSlice::span(amb_->action, amb_->ring, rank(), action(), standard_elements(amb_->gb, rank(), d), d);
  }

 private:
  std::shared_ptr<const EquivariantAmbient> amb_;
  PolyMatrix jac_;
  std::vector<Matrix> linear_;
};

/// k-basis of the kernel of the Jacobian on a derivation slice.
inline std::vector<FreeModuleElement> tangent_kernel(const DerivationModule& der, const GModuleSlice& s) {
  detail::SparseEchelon index(s.field());
  std::vector<detail::SparseEchelon::Row> images;
  for (const auto& b : s.basis()) images.push_back(index.to_row(der.apply_jacobian(b)));
  std::size_t rows = 0;
  for (const auto& r : images)
    for (const auto& [c, x] : r) rows = std::max(rows, c + 1);
  Matrix m(s.field(), rows, s.dimension());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [c, x] : images[j]) m(c, j) = x;
  std::vector<FreeModuleElement> out;
  for (const auto& v : nullspace(m)) out.push_back(s.element(v));
  return out;
}

struct DerivationResult {
  std::vector<FreeModuleElement> generators;  // B-module generators of Hom(Ω, B)
  std::vector<FreeModuleElement> invariant;   // k-basis of invariants of degree ≤ trunc
};

enum class InvariantMethod { automatic, reynolds, linear_solve };

/// Hom(Ω_B, B) as the kernel of the Jacobian, and its invariant part in the
/// slice of degree ≤ trunc. Derivations are written on the variables of `p`.
inline DerivationResult derivations(const AffinePresentation& p, const GroupAction& g, long trunc,
                                    InvariantMethod method = InvariantMethod::automatic) {
  auto amb = small_ambient(p, g);
  DerivationModule der(amb);
  DerivationResult out;
  out.generators = module_kernel(der.jacobian_matrix(), p.nvars(), p.gb);
  auto kernel = tangent_kernel(der, der.slice(trunc));
  auto ks = GModuleSlice::span(g, p.ring, p.nvars(), der.action(), kernel, trunc);
  if (method == InvariantMethod::automatic) method = g.is_tame() ? InvariantMethod::reynolds : InvariantMethod::linear_solve;
  if (method == InvariantMethod::linear_solve) {
    out.invariant = invariants(ks);
    return out;
  }
  if (!g.is_tame()) throw ArithmeticError("order not invertible: Reynolds projection needs a tame group");
  Scalar inv = Scalar(p.ring->field(), static_cast<long>(g.order())).inverse();
  detail::SparseEchelon span(p.ring->field());
  for (const auto& b : ks.basis()) {
    auto avg = zero_element(p.ring, p.nvars());
    for (std::size_t s = 0; s < g.order(); ++s) avg = avg + der.act(s, b);
    avg = inv * avg;
    span.insert(span.to_row(avg));
  }
  for (const auto& r : span.rows()) out.invariant.push_back(span.element(p.ring, p.nvars(), r));
  return out;
}

}  // namespace eqdef
