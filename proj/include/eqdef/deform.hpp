#pragma once

// Equivariant deformations over k[ε]/(ε^{m+1}): tangent spaces, obstruction
// space, the ν and μ torsor maps, the ω equivariantization cocycle and
// order-by-order lifting.
//
// Every computation over the artinian base is peeled order by order in ε and
// solved with normal forms over k[X].

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqdef/ambient.hpp"
#include "eqdef/cohomology.hpp"

namespace eqdef {

class DeformationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A = k[ε]/(ε^{m+1}).
struct ArtinianBase {
  unsigned order = 0;
  Field field;
  friend bool operator==(const ArtinianBase&, const ArtinianBase&) = default;
};

/// Coefficients of ε^0..ε^m.
using Series = std::vector<Polynomial>;

/// Extra degrees used when solving on slices: coboundaries and derivation
/// images are drawn from degree D + lookahead.
inline constexpr long kSliceLookahead = 2;

/// Everything attached to one ambient, shared by the deformations in it.
struct DeformationContext {
  EquivariantAmbient ambient;
  NormalModule normal;
  DerivationModule derivations;
  SubmoduleLift lift;  // cofactors over the ambient generators

  explicit DeformationContext(const EquivariantAmbient& amb)
      : ambient(amb), normal(amb), derivations(amb), lift(amb.ring, 1, columns(amb.gens)) {}

  /// k-basis of invariant ambient derivations of degree ≤ d, memoized.
  const std::vector<FreeModuleElement>& invariant_derivations(long d) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->derivations.find(d);
    if (it == cache_->derivations.end()) it = cache_->derivations.emplace(d, invariants(derivations.slice(d))).first;
    return it->second;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<long, std::vector<FreeModuleElement>> derivations;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  static std::vector<FreeModuleElement> columns(const std::vector<Polynomial>& gens) {
    std::vector<FreeModuleElement> out;
    for (const auto& f : gens) out.push_back({f});
    return out;
  }
};

using ContextPtr = std::shared_ptr<const DeformationContext>;

inline ContextPtr make_context(const EquivariantAmbient& amb) { return std::make_shared<const DeformationContext>(amb); }

namespace detail {

inline Series zero_series(const RingPtr& ring, unsigned m) { return Series(m + 1, Polynomial(ring)); }

/// Σ a_l F_l truncated at ε^m.
inline Series combine(const std::vector<Series>& a, const std::vector<Series>& f, unsigned m) {
  Series out = zero_series(f.empty() ? a[0][0].ring() : f[0][0].ring(), m);
  for (std::size_t l = 0; l < f.size(); ++l)
    for (unsigned s = 0; s <= m; ++s) {
      if (a[l][s].is_zero()) continue;
      for (unsigned t = 0; s + t <= m; ++t)
        if (!f[l][t].is_zero()) out[s + t] += a[l][s] * f[l][t];
    }
  return out;
}

/// Cofactors a with h = Σ a_l F_l mod ε^{m+1}, where F_{·,0} are the context
/// generators. Greedy peeling is exact here since syzygies of a regular
/// sequence lift to every flat deformation of it.
inline std::optional<std::vector<Series>> divide(const DeformationContext& ctx, const std::vector<Series>& f,
                                                 const Series& h, unsigned m) {
  const RingPtr& ring = ctx.ambient.ring;
  const std::size_t c = f.size();
  std::vector<Series> a(c, zero_series(ring, m));
  for (unsigned t = 0; t <= m; ++t) {
    Polynomial r = h[t];
    for (std::size_t l = 0; l < c; ++l)
      for (unsigned s = 0; s < t; ++s)
        if (!a[l][s].is_zero() && !f[l][t - s].is_zero()) r -= a[l][s] * f[l][t - s];
    if (r.is_zero()) continue;
    if (c == 0) return std::nullopt;
    auto q = ctx.lift.lift({r});
    if (!q) return std::nullopt;
    for (std::size_t l = 0; l < c; ++l) a[l][t] = (*q)[l];
  }
  return a;
}

inline Series apply_group(const GroupAction& g, std::size_t s, const Series& f) {
  Series out;
  for (const auto& x : f) out.push_back(g.apply(s, x));
  return out;
}

}  // namespace detail

/// Division data σ(F_j) = Σ_l T_σ[j][l] F_l over A_m, indexed [σ][j][l].
struct EquivarianceCertificate {
  std::vector<std::vector<std::vector<Series>>> cofactors;
};

/// Generators F_j = f_j + ε g_{j,1} + ... + ε^m g_{j,m} in an ambient.
class Deformation {
 public:
  Deformation() = default;

  static Deformation make(ContextPtr ctx, unsigned order, std::vector<Series> gens) {
    Deformation d;
    d.ctx_ = std::move(ctx);
    d.base_ = {order, d.ctx_->ambient.ring->field()};
    for (auto& s : gens) {
      if (s.size() > order + 1) throw DeformationError("generator has terms beyond the order");
      s.resize(order + 1, Polynomial(d.ctx_->ambient.ring));
      for (auto& x : s)
        if (!x.ring()) x = Polynomial(d.ctx_->ambient.ring);
    }
    d.gens_ = std::move(gens);
    d.certify();
    return d;
  }

  /// The base generators with zero ε terms.
  static Deformation trivial(ContextPtr ctx, unsigned order) {
    std::vector<Series> gens;
    for (const auto& f : ctx->ambient.gens) gens.push_back({f});
    return make(std::move(ctx), order, std::move(gens));
  }

  const ContextPtr& context() const { return ctx_; }
  const EquivariantAmbient& ambient() const { return ctx_->ambient; }
  const ArtinianBase& base() const { return base_; }
  unsigned order() const { return base_.order; }
  const std::vector<Series>& generators() const { return gens_; }
  const std::optional<EquivarianceCertificate>& certificate() const { return cert_; }
  bool is_equivariant() const { return cert_.has_value(); }

  /// Reduction modulo ε^{t+1}.
  Deformation truncate(unsigned t) const {
    if (t > order()) throw DeformationError("cannot truncate to a higher order");
    std::vector<Series> g;
    for (const auto& s : gens_) g.emplace_back(s.begin(), s.begin() + t + 1);
    return make(ctx_, t, std::move(g));
  }

  /// Coefficientwise lift to order m+1 with zero top terms.
  Deformation extend() const {
    std::vector<Series> g = gens_;
    for (auto& s : g) s.push_back(Polynomial(ambient().ring));
    return make(ctx_, order() + 1, std::move(g));
  }

  /// "f + eps*(g1) + eps^2*(g2)" per generator.
  std::vector<std::string> render() const {
    std::vector<std::string> out;
    for (const auto& s : gens_) {
      std::string r = eqdef::render(s[0]);
      for (unsigned t = 1; t < s.size(); ++t) {
        if (s[t].is_zero()) continue;
        r += t == 1 ? " + eps*(" : " + eps^" + std::to_string(t) + "*(";
        r += eqdef::render(s[t]) + ")";
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  friend bool operator==(const Deformation& a, const Deformation& b) {
    return a.ctx_ == b.ctx_ && a.base_ == b.base_ && a.gens_ == b.gens_;
  }

 private:
  void certify() {
    cert_.reset();
    if (gens_.size() != ambient().gens.size()) return;
    for (std::size_t j = 0; j < gens_.size(); ++j)
      if (gens_[j][0] != ambient().gens[j]) return;
    EquivarianceCertificate c;
    const auto& g = ambient().action;
    for (std::size_t s = 0; s < g.order(); ++s) {
      std::vector<std::vector<Series>> rows;
      for (const auto& f : gens_) {
        auto a = detail::divide(*ctx_, gens_, detail::apply_group(g, s, f), order());
        if (!a) return;
        rows.push_back(std::move(*a));
      }
      c.cofactors.push_back(std::move(rows));
    }
    cert_ = std::move(c);
  }

  ContextPtr ctx_;
  ArtinianBase base_;
  std::vector<Series> gens_;
  std::optional<EquivarianceCertificate> cert_;
};

struct DeformationCheck {
  bool reduces_to_base = false;
  bool equivariant = false;
  bool regular = false;

  bool ok() const { return reduces_to_base && equivariant && regular; }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    if (!reduces_to_base) out.push_back("reduction mod eps differs from the base generators");
    if (!equivariant) out.push_back("equivariance division fails over the artinian base");
    if (!regular) out.push_back("reduction mod eps is not a regular sequence");
    return out;
  }
};

inline DeformationCheck verify_deformation(const Deformation& d) {
  DeformationCheck c;
  const auto& amb = d.ambient();
  c.reduces_to_base = d.generators().size() == amb.gens.size();
  std::vector<Polynomial> reduced;
  for (std::size_t j = 0; j < d.generators().size(); ++j) {
    reduced.push_back(d.generators()[j][0]);
    if (c.reduces_to_base && d.generators()[j][0] != amb.gens[j]) c.reduces_to_base = false;
  }
  c.equivariant = d.is_equivariant();
  c.regular = is_regular_sequence(amb.ring, reduced).regular;
  return c;
}

/// True iff the two deformations generate the same ideal over A_m.
inline bool same_ideal(const Deformation& a, const Deformation& b) {
  if (a.context() != b.context() || a.order() != b.order()) throw DeformationError("deformations live over different bases");
  auto inside = [](const Deformation& x, const Deformation& y) {
    for (const auto& f : x.generators())
      if (!detail::divide(*y.context(), y.generators(), f, y.order())) return false;
    return true;
  };
  return inside(a, b) && inside(b, a);
}

/// An element of N ⊗ 𝔞, 𝔞 = (ε^m).
struct NuClass {
  unsigned order = 0;
  FreeModuleElement value;
};

/// The order-m difference of two lifts of the same deformation, with no
/// invariance check.
inline NuClass nu_difference(const Deformation& d1, const Deformation& d2) {
  if (d1.context() != d2.context()) throw DeformationError("deformations live in different ambients");
  if (d1.order() != d2.order()) throw DeformationError("deformations have different orders");
  const unsigned m = d1.order();
  if (m == 0) throw DeformationError("difference classes need order at least 1");
  NuClass nu;
  nu.order = m;
  for (std::size_t j = 0; j < d1.generators().size(); ++j) {
    const auto& a = d1.generators()[j];
    const auto& b = d2.generators()[j];
    for (unsigned t = 0; t < m; ++t)
      if (a[t] != b[t]) throw DeformationError("lifts do not agree below the top order");
    nu.value.push_back(d1.ambient().reduce(a[m] - b[m]));
  }
  return nu;
}

/// ν(d₁, d₂): sends F_j* to the class of (F¹_j − F²_j)/ε^m.
inline NuClass nu_class(const Deformation& d1, const Deformation& d2) {
  auto nu = nu_difference(d1, d2);
  const auto& nm = d1.context()->normal;
  for (std::size_t s = 0; s < d1.ambient().action.order(); ++s)
    if (nm.act(s, nu.value) != nu.value) throw DeformationError("difference class is not invariant");
  return nu;
}

/// F_j − ε^m ν_j.
inline Deformation apply_nu(const Deformation& d, const NuClass& nu) {
  if (nu.order != d.order()) throw DeformationError("class order differs from the deformation order");
  auto gens = d.generators();
  for (std::size_t j = 0; j < gens.size(); ++j) gens[j][d.order()] -= nu.value[j];
  return Deformation::make(d.context(), d.order(), std::move(gens));
}

/// An ambient derivation, one value per ambient variable.
struct DerivationWitness {
  FreeModuleElement values;
};

namespace detail {

/// F(X + sign·ε^m D) for m ≥ 1.
inline Deformation flow(const Deformation& d, const FreeModuleElement& dvals, int sign) {
  const unsigned m = d.order();
  const auto& ring = d.ambient().ring;
  auto gens = d.generators();
  for (auto& s : gens) {
    Polynomial inc(ring);
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      if (!dvals[i].is_zero()) inc += derivative(s[0], i) * dvals[i];
    if (sign < 0) inc = -inc;
    s[m] += inc;
  }
  return Deformation::make(d.context(), m, std::move(gens));
}

/// Solves Σ c_k v_k = target over k; returns the coefficients.
inline std::optional<Vector> solve_span(const Field& k, const std::vector<FreeModuleElement>& vs,
                                        const FreeModuleElement& target) {
  SparseEchelon index(k);
  std::vector<SparseEchelon::Row> rows;
  for (const auto& v : vs) rows.push_back(index.to_row(v));
  auto t = index.to_row(target);
  std::size_t n = 0;
  for (const auto& r : rows)
    for (const auto& [c, x] : r) n = std::max(n, c + 1);
  for (const auto& [c, x] : t) n = std::max(n, c + 1);
  Matrix a(k, n, vs.size());
  Vector b = zero_vector(k, n);
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (const auto& [c, x] : rows[j]) a(c, j) = x;
  for (const auto& [c, x] : t) b[c] = x;
  return solve(a, b);
}

}  // namespace detail

/// The automorphism y ↦ y + ε^m D of the ambient over A_m.
inline Deformation apply_flow(const Deformation& d, const DerivationWitness& w) { return detail::flow(d, w.values, 1); }

/// An invariant ambient derivation D of degree ≤ trunc with J·D ≡ ν(d₁, d₂);
/// y ↦ y + ε^m D then carries the ideal of d₂ onto that of d₁. The witness is
/// checked in both directions before it is returned.
inline std::optional<DerivationWitness> iso_witness(const Deformation& d1, const Deformation& d2, long trunc) {
  auto nu = nu_class(d1, d2);
  const auto& ctx = *d1.context();
  const auto& der = ctx.derivations;
  const auto& inv = ctx.invariant_derivations(trunc);
  std::vector<FreeModuleElement> images;
  for (const auto& v : inv) images.push_back(der.apply_jacobian(v));
  auto c = detail::solve_span(ctx.ambient.ring->field(), images, nu.value);
  if (!c) return std::nullopt;
  DerivationWitness w{zero_element(ctx.ambient.ring, der.rank())};
  for (std::size_t k = 0; k < inv.size(); ++k)
    if (!(*c)[k].is_zero()) w.values = w.values + (*c)[k] * inv[k];
  w.values = ctx.ambient.reduce(w.values);
  if (!same_ideal(detail::flow(d2, w.values, 1), d1) || !same_ideal(detail::flow(d1, w.values, -1), d2))
    throw std::logic_error("isomorphism witness failed verification");
  return w;
}

/// ω(σ) = ν(σX′, X′) for a lift F̃ over A_{m+1} of an equivariant d over
/// A_m, where σX′ has generators σ(Σ_l T_{σ⁻¹}[j][l] F̃_l). Values live in the
/// normal module.
inline CohomologyClass omega_cocycle(const Deformation& d, const Deformation& lifted) {
  if (!d.is_equivariant()) throw DeformationError("base deformation is not equivariant");
  if (lifted.context() != d.context() || lifted.order() != d.order() + 1)
    throw DeformationError("lift must live one order higher in the same ambient");
  if (!(lifted.truncate(d.order()).generators() == d.generators())) throw DeformationError("lift does not reduce to the deformation");
  const unsigned m = d.order();
  const auto& g = d.ambient().action;
  const auto& cert = *d.certificate();
  const std::size_t c = d.generators().size();
  CohomologyClass w;
  for (std::size_t s = 0; s < g.order(); ++s) {
    const auto& t = cert.cofactors[g.inverse(s)];
    FreeModuleElement val;
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Series> a;
      for (std::size_t l = 0; l < c; ++l) {
        Series x = t[j][l];
        x.push_back(Polynomial(d.ambient().ring));
        a.push_back(std::move(x));
      }
      auto comb = detail::combine(a, lifted.generators(), m + 1);
      val.push_back(d.ambient().reduce(g.apply(s, comb[m + 1]) - lifted.generators()[j][m + 1]));
    }
    w.values.push_back(std::move(val));
  }
  return w;
}

inline long max_degree(const std::vector<FreeModuleElement>& vs) {
  long d = 0;
  for (const auto& v : vs)
    for (const auto& x : v) d = std::max(d, x.degree());
  return d;
}

struct LiftResult {
  std::optional<Deformation> lift;
  std::optional<CohomologyClass> obstruction;  // class of ω when no correction exists
  long slice = 0;                               // degree bound used for the search
};

/// Corrects F̃ to F̃ − ε^{m+1}φ with ∂φ = ω, or reports ω.
inline LiftResult equivariantize(const Deformation& d, const Deformation& lifted, long trunc) {
  auto w = omega_cocycle(d, lifted);
  LiftResult r;
  r.slice = std::max(trunc, max_degree(w.values));
  const auto& nm = d.context()->normal;
  auto wide = nm.slice(r.slice + kSliceLookahead);
  auto phi = solve_coboundary(w, wide);
  if (!phi) {
    r.obstruction = std::move(w);
    return r;
  }
  auto gens = lifted.generators();
  for (std::size_t j = 0; j < gens.size(); ++j) gens[j][lifted.order()] -= (*phi)[j];
  auto out = Deformation::make(d.context(), lifted.order(), std::move(gens));
  if (!out.is_equivariant()) throw std::logic_error("corrected lift is not equivariant");
  r.lift = std::move(out);
  return r;
}

inline LiftResult lift_step(const Deformation& d, long trunc) { return equivariantize(d, d.extend(), trunc); }

struct TangentSpaces {
  std::vector<FreeModuleElement> t0;              // invariant derivations of B, degree ≤ trunc
  QuotientBasis t1;                               // T¹ of the presentation
  std::vector<FreeModuleElement> t1_equivariant;  // representatives in N^G of the ambient
  bool exact = false;                             // T¹_G computed without a slice
  long slice = 0;
};

/// T¹ = B^c / (Jacobian image + I·B^c).
inline QuotientBasis t1_quotient(const AffinePresentation& p, long trunc) {
  ModulePresentation m;
  m.rank = p.codim();
  m.base = p.gb;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    FreeModuleElement col;
    for (const auto& f : p.gens) col.push_back(derivative(f, i));
    m.relations.push_back(std::move(col));
  }
  return quotient_basis(m, trunc);
}

/// (T¹)^G from the induced action on a finite T¹ of the small ambient.
inline std::vector<FreeModuleElement> t1_invariants_exact(const QuotientBasis& q, const NormalModule& nm) {
  const auto& amb = nm.ambient();
  const auto& ring = amb.ring;
  const Field& k = ring->field();
  const std::size_t d = q.dimension();
  auto element = [&](std::size_t b) {
    auto v = zero_element(ring, nm.rank());
    v[q.basis[b].pos] = Polynomial::term(ring, ring->one(), q.basis[b].mono);
    return v;
  };
  auto coords = [&](const FreeModuleElement& v) {
    auto r = q.gb.normal_form(v);
    Vector c = zero_vector(k, d);
    for (std::size_t b = 0; b < d; ++b) c[b] = r[q.basis[b].pos].coefficient(q.basis[b].mono);
    return c;
  };
  const auto& gens = amb.action.generators();
  Matrix stacked(k, d * gens.size(), d);
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (std::size_t b = 0; b < d; ++b) {
      auto img = coords(nm.act(gens[gi], element(b)));
      img[b] -= Scalar::one(k);
      for (std::size_t i = 0; i < d; ++i) stacked(gi * d + i, b) = img[i];
    }
  std::vector<FreeModuleElement> out;
  for (const auto& v : nullspace(stacked)) {
    auto e = zero_element(ring, nm.rank());
    for (std::size_t b = 0; b < d; ++b)
      if (!v[b].is_zero()) e = e + v[b] * element(b);
    out.push_back(std::move(e));
  }
  return out;
}

/// N^G modulo the image of invariant ambient derivations, on the slice of
/// degree ≤ trunc. Needs H¹(G, ambient derivations) = 0, which holds for the
/// regular-representation ambient and for any ambient when G is tame.
inline std::vector<FreeModuleElement> t1_invariants_slice(const DeformationContext& ctx, long trunc) {
  auto inv = invariants(ctx.normal.slice(trunc));
  detail::SparseEchelon span(ctx.ambient.ring->field());
  for (const auto& d : ctx.invariant_derivations(trunc + kSliceLookahead))
    span.insert(span.to_row(ctx.derivations.apply_jacobian(d)));
  std::vector<FreeModuleElement> out;
  for (const auto& v : inv)
    if (span.insert(span.to_row(v))) out.push_back(v);
  return out;
}

inline TangentSpaces tangent_spaces(const AffinePresentation& p, const GroupAction& g, const DeformationContext& ctx,
                                    long trunc) {
  TangentSpaces t;
  t.slice = trunc;
  t.t0 = derivations(p, g, trunc).invariant;
  t.t1 = t1_quotient(p, trunc);
  if (g.is_tame() && ctx.ambient.kind == AmbientKind::small && t.t1.finite) {
    t.t1_equivariant = t1_invariants_exact(t.t1, ctx.normal);
    t.exact = true;
  } else {
    t.t1_equivariant = t1_invariants_slice(ctx, trunc);
  }
  return t;
}

struct ObstructionSpace {
  std::size_t dimension = 0;
  std::vector<CohomologyClass> representatives;
  bool exact = false;
  long slice = 0;
};

/// H¹(G, N) on the slice of degree ≤ trunc; zero exactly when G is tame.
inline ObstructionSpace obstruction_space(const GroupAction& g, const DeformationContext& ctx, long trunc) {
  ObstructionSpace o;
  o.slice = trunc;
  if (g.is_tame()) {
    o.exact = true;
    return o;
  }
  auto h = h1(ctx.normal.slice(trunc), ctx.normal.slice(trunc + kSliceLookahead));
  o.dimension = h.dimension;
  o.representatives = std::move(h.representatives);
  return o;
}

/// Ambient used by the pipeline: the presentation itself when G is tame,
/// the regular-representation ambient otherwise.
inline EquivariantAmbient default_ambient(const AffinePresentation& p, const GroupAction& g) {
  return g.is_tame() ? small_ambient(p, g) : regular_rep_embedding(p, g);
}

/// Coefficients used when enumerating T¹_G directions: every residue over
/// F_p, and {0, 1} over ℚ.
inline std::vector<Scalar> enumeration_coefficients(const Field& k) {
  std::vector<Scalar> out;
  const long n = k.is_rational() ? 2 : static_cast<long>(k.characteristic());
  for (long c = 0; c < n; ++c) out.push_back(Scalar(k, c));
  return out;
}

/// apply_nu(lift, Σ c_b t_b) for every coefficient vector c, the first
/// coefficient varying fastest.
inline std::vector<Deformation> enumerate_lifts(const Deformation& lift, const std::vector<FreeModuleElement>& t1g) {
  const auto& ring = lift.ambient().ring;
  auto coeffs = enumeration_coefficients(ring->field());
  double total = 1;
  for (std::size_t b = 0; b < t1g.size(); ++b) total *= static_cast<double>(coeffs.size());
  if (total > 4096) throw std::invalid_argument("too many tangent directions to enumerate");
  std::vector<Deformation> out;
  std::vector<std::size_t> digits(t1g.size(), 0);
  while (true) {
    NuClass nu{lift.order(), zero_element(ring, lift.generators().size())};
    for (std::size_t b = 0; b < t1g.size(); ++b)
      if (digits[b]) nu.value = nu.value + coeffs[digits[b]] * t1g[b];
    nu.value = lift.ambient().reduce(nu.value);
    out.push_back(apply_nu(lift, nu));
    std::size_t b = 0;
    while (b < t1g.size() && ++digits[b] == coeffs.size()) digits[b++] = 0;
    if (b == t1g.size()) break;
  }
  return out;
}

/// A deformation written in the presentation's own variables, moved into a
/// regular-representation ambient built from the same presentation. The
/// coordinate equations X_{i,σ} − s_{i,σ} keep zero ε terms.
inline Deformation transport(const Deformation& d, const ContextPtr& target) {
  const auto& amb = target->ambient;
  if (d.ambient().kind != AmbientKind::small || amb.base != d.ambient().ring)
    throw DeformationError("transport needs a deformation in the presentation's own variables");
  std::vector<Series> gens;
  for (const auto& s : d.generators()) {
    Series t;
    for (const auto& x : s) t.push_back(amb.to_ambient(x));
    gens.push_back(std::move(t));
  }
  for (std::size_t j = gens.size(); j < amb.gens.size(); ++j) gens.push_back({amb.gens[j]});
  return Deformation::make(target, d.order(), std::move(gens));
}

}  // namespace eqdef
