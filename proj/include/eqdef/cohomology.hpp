#pragma once

// Cohomology of a finite group with coefficients in finite k-slices of
// B-modules. A slice is a G-stable k-subspace of B^r spanned by normal-form
// representatives; everything after construction is linear algebra over k.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eqdef/gaction.hpp"
#include "eqdef/groebner.hpp"
#include "eqdef/linalg.hpp"

namespace eqdef {

/// σ ↦ (v ↦ σ·v) on normal-form representatives in B^r.
using ModuleAction = std::function<FreeModuleElement(std::size_t, const FreeModuleElement&)>;

namespace detail {

/// Row reduction over sparse vectors indexed by (position, monomial), with
/// columns created on first sight.
class SparseEchelon {
 public:
  using Row = std::map<std::size_t, Scalar>;

  explicit SparseEchelon(Field k) : k_(std::move(k)) {}

  Row to_row(const FreeModuleElement& v) {
    Row r;
    for (std::size_t p = 0; p < v.size(); ++p)
      for (const auto& t : v[p].terms()) r.emplace(column(p, t.mono), t.coeff);
    return r;
  }

  /// Row of v if every key is already known; nullopt otherwise.
  std::optional<Row> to_row_known(const FreeModuleElement& v) const {
    Row r;
    for (std::size_t p = 0; p < v.size(); ++p)
      for (const auto& t : v[p].terms()) {
        auto it = cols_.find({p, t.mono.exp});
        if (it == cols_.end()) return std::nullopt;
        r.emplace(it->second, t.coeff);
      }
    return r;
  }

  void reduce(Row& r) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto it = r.find(pivots_[i]);
      if (it == r.end()) continue;
      Scalar c = it->second;
      axpy(r, -c, rows_[i]);
    }
  }

  /// Inserts r; returns the index of the new row or nullopt if dependent.
  std::optional<std::size_t> insert(Row r) {
    reduce(r);
    if (r.empty()) return std::nullopt;
    auto p = r.begin()->first;
    Scalar inv = r.begin()->second.inverse();
    for (auto& [c, x] : r) x *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto it = rows_[i].find(p);
      if (it == rows_[i].end()) continue;
      Scalar c = it->second;
      axpy(rows_[i], -c, r);
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return rows_.size() - 1;
  }

  /// Coordinates of a member row with respect to rows().
  Vector coordinates(const Row& r) const {
    Vector c = zero_vector(k_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto it = r.find(pivots_[i]);
      if (it != r.end()) c[i] = it->second;
    }
    return c;
  }

  FreeModuleElement element(const RingPtr& ring, std::size_t rank, const Row& r) const {
    std::vector<std::vector<Term>> terms(rank);
    for (const auto& [c, x] : r) {
      const auto& key = keys_[c];
      terms[key.first].push_back({Monomial(key.second), x});
    }
    FreeModuleElement v;
    for (auto& ts : terms) v.push_back(Polynomial::from_terms(ring, std::move(ts)));
    return v;
  }

  const std::vector<Row>& rows() const { return rows_; }

 private:
  using Key = std::pair<std::size_t, std::vector<std::uint32_t>>;

  std::size_t column(std::size_t p, const Monomial& m) {
    auto [it, fresh] = cols_.emplace(Key{p, m.exp}, keys_.size());
    if (fresh) keys_.push_back(it->first);
    return it->second;
  }

  static void axpy(Row& r, const Scalar& c, const Row& w) {
    for (const auto& [col, x] : w) {
      auto it = r.find(col);
      if (it == r.end()) {
        r.emplace(col, c * x);
      } else {
        it->second += c * x;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  }

  Field k_;
  std::map<Key, std::size_t> cols_;
  std::vector<Key> keys_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

/// m·e_p for every standard monomial m of degree ≤ bound, position by position.
inline std::vector<FreeModuleElement> standard_elements(const GroebnerBasis& gb, std::size_t rank, long bound) {
  const RingPtr& ring = gb.ring();
  std::vector<FreeModuleElement> out;
  if (gb.is_unit()) return out;
  for (const auto& mono : detail::monomials_up_to(ring->nvars(), bound)) {
    if (!gb.is_standard(mono)) continue;
    for (std::size_t p = 0; p < rank; ++p) {
      auto v = zero_element(ring, rank);
      v[p] = Polynomial::term(ring, ring->one(), mono);
      out.push_back(std::move(v));
    }
  }
  return out;
}

/// A finite-dimensional G-stable subspace of B^r with its action matrices.
class GModuleSlice {
 public:
  GModuleSlice() = default;

  /// The G-stable span of `seeds`. `bound` is recorded as the slice degree.
  static GModuleSlice span(const GroupAction& g, const RingPtr& ring, std::size_t rank, ModuleAction act,
                           const std::vector<FreeModuleElement>& seeds, long bound) {
    GModuleSlice m;
    m.ring_ = ring;
    m.rank_ = rank;
    m.bound_ = bound;
    m.mul_ = g.table();
    m.inv_.resize(g.order());
    for (std::size_t s = 0; s < g.order(); ++s) m.inv_[s] = g.inverse(s);
    m.gens_ = g.generators();
    m.echelon_ = std::make_shared<detail::SparseEchelon>(ring->field());
    auto& ech = *m.echelon_;
    std::vector<FreeModuleElement> queue;
    auto push = [&](const FreeModuleElement& v) {
      if (ech.insert(ech.to_row(v))) queue.push_back(v);
    };
    for (const auto& v : seeds) push(v);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto s : m.gens_) push(act(s, queue[i]));
    for (const auto& r : ech.rows()) m.basis_.push_back(ech.element(ring, rank, r));
    const std::size_t d = m.basis_.size();
    for (std::size_t s = 0; s < g.order(); ++s) {
      Matrix a(ring->field(), d, d);
      for (std::size_t j = 0; j < d; ++j) {
        auto c = m.coordinates(act(s, m.basis_[j]));
        if (!c) throw std::logic_error("slice is not stable under the group");
        for (std::size_t i = 0; i < d; ++i) a(i, j) = (*c)[i];
      }
      m.action_.push_back(std::move(a));
    }
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  const Field& field() const { return ring_->field(); }
  std::size_t rank() const { return rank_; }
  std::size_t dimension() const { return basis_.size(); }
  long bound() const { return bound_; }
  std::size_t group_order() const { return mul_.size(); }
  const std::vector<std::size_t>& generators() const { return gens_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return mul_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }

  const std::vector<FreeModuleElement>& basis() const { return basis_; }
  const Matrix& action(std::size_t s) const { return action_[s]; }

  std::optional<Vector> coordinates(const FreeModuleElement& v) const {
    auto r = echelon_->to_row_known(v);
    if (!r) return std::nullopt;
    auto row = *r;
    echelon_->reduce(row);
    if (!row.empty()) return std::nullopt;
    return echelon_->coordinates(*r);
  }

  FreeModuleElement element(const Vector& c) const {
    auto v = zero_element(ring_, rank_);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) v = v + c[i] * basis_[i];
    return v;
  }

 private:
  RingPtr ring_;
  std::size_t rank_ = 0;
  long bound_ = 0;
  std::vector<std::vector<std::size_t>> mul_;
  std::vector<std::size_t> inv_;
  std::vector<std::size_t> gens_;
  std::vector<FreeModuleElement> basis_;
  std::vector<Matrix> action_;
  std::shared_ptr<detail::SparseEchelon> echelon_;
};

/// A p-cochain: values indexed by group element (p = 0, 1) or by pairs
/// a·|G| + b (p = 2).
struct CohomologyClass {
  int degree = 1;
  std::vector<FreeModuleElement> values;
};

/// k-basis of the fixed space M^G.
inline std::vector<FreeModuleElement> invariants(const GModuleSlice& m) {
  const std::size_t d = m.dimension();
  const Field& k = m.field();
  Matrix stacked(k, d * m.generators().size(), d);
  std::size_t r = 0;
  for (auto s : m.generators()) {
    const auto& a = m.action(s);
    for (std::size_t i = 0; i < d; ++i, ++r)
      for (std::size_t j = 0; j < d; ++j) stacked(r, j) = a(i, j) - (i == j ? Scalar::one(k) : Scalar::zero(k));
  }
  std::vector<FreeModuleElement> out;
  for (const auto& v : nullspace(stacked)) out.push_back(m.element(v));
  return out;
}

namespace detail {

/// Per element τ, the linear map (values on generators) ↦ c(τ) obtained by
/// extending c(gτ) = g·c(τ) + c(g) along a breadth-first spanning tree.
inline std::vector<Matrix> cocycle_extension(const GModuleSlice& m) {
  const Field& k = m.field();
  const std::size_t d = m.dimension(), ng = m.generators().size(), order = m.group_order();
  std::vector<std::optional<Matrix>> ext(order);
  ext[0] = Matrix(k, d, d * ng);
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto t = queue[q];
    for (std::size_t gi = 0; gi < ng; ++gi) {
      auto g = m.generators()[gi];
      auto gt = m.multiply(g, t);
      if (ext[gt]) continue;
      Matrix e = m.action(g) * *ext[t];
      for (std::size_t i = 0; i < d; ++i) e(i, gi * d + i) += Scalar::one(k);
      ext[gt] = std::move(e);
      queue.push_back(gt);
    }
  }
  std::vector<Matrix> out;
  for (auto& e : ext) {
    if (!e) throw std::logic_error("generators do not generate the group");
    out.push_back(std::move(*e));
  }
  return out;
}

/// Basis of Z¹ as vectors of generator values (length d·ng).
inline std::vector<Vector> cocycle_space(const GModuleSlice& m, const std::vector<Matrix>& ext) {
  const Field& k = m.field();
  const std::size_t d = m.dimension(), ng = m.generators().size(), order = m.group_order();
  Matrix eqs(k, order * ng * d, d * ng);
  std::size_t r = 0;
  for (std::size_t t = 0; t < order; ++t)
    for (std::size_t gi = 0; gi < ng; ++gi) {
      auto g = m.generators()[gi];
      // c(gt) − g·c(t) − c(g) = 0
      Matrix lhs = m.action(g) * ext[t];
      const auto& cgt = ext[m.multiply(g, t)];
      for (std::size_t i = 0; i < d; ++i, ++r)
        for (std::size_t j = 0; j < d * ng; ++j) {
          Scalar v = cgt(i, j) - lhs(i, j);
          if (j == gi * d + i) v -= Scalar::one(k);
          eqs(r, j) = v;
        }
    }
  return nullspace(eqs);
}

inline Vector coboundary_on_generators(const GModuleSlice& m, const Vector& phi) {
  Vector out;
  for (auto g : m.generators()) {
    Vector v = m.action(g).apply(phi);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= phi[i];
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// Embeds generator values from slice `from` into the coordinates of `to`.
inline Vector transfer(const GModuleSlice& from, const GModuleSlice& to, const Vector& gens_values) {
  const std::size_t d = from.dimension();
  Vector out;
  for (std::size_t gi = 0; gi < from.generators().size(); ++gi) {
    Vector part(gens_values.begin() + static_cast<long>(gi * d), gens_values.begin() + static_cast<long>((gi + 1) * d));
    auto c = to.coordinates(from.element(part));
    if (!c) throw std::logic_error("slice is not contained in the wider slice");
    out.insert(out.end(), c->begin(), c->end());
  }
  return out;
}

}  // namespace detail

/// Checks c(στ) = σ·c(τ) + c(σ) for all pairs.
inline bool is_cocycle(const CohomologyClass& c, const GModuleSlice& m) {
  const auto order = m.group_order();
  if (c.degree != 1 || c.values.size() != order) return false;
  std::vector<Vector> vals;
  for (const auto& v : c.values) {
    auto x = m.coordinates(v);
    if (!x) return false;
    vals.push_back(std::move(*x));
  }
  for (std::size_t s = 0; s < order; ++s)
    for (std::size_t t = 0; t < order; ++t) {
      Vector rhs = m.action(s).apply(vals[t]);
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += vals[s][i];
      if (rhs != vals[m.multiply(s, t)]) return false;
    }
  return true;
}

/// The cocycle σ ↦ σφ − φ.
inline CohomologyClass coboundary(const FreeModuleElement& phi, const GModuleSlice& m) {
  auto x = m.coordinates(phi);
  if (!x) throw std::invalid_argument("element is not in the slice");
  CohomologyClass c;
  for (std::size_t s = 0; s < m.group_order(); ++s) {
    Vector v = m.action(s).apply(*x);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= (*x)[i];
    c.values.push_back(m.element(v));
  }
  return c;
}

struct H1Result {
  std::size_t dimension = 0;
  std::vector<CohomologyClass> representatives;
};

/// H¹ with cocycles valued in `m` and coboundaries taken from `wider`, which
/// must contain m. With wider = m this is H¹ of the slice itself.
inline H1Result h1(const GModuleSlice& m, const GModuleSlice& wider) {
  const Field& k = m.field();
  auto ext = detail::cocycle_extension(m);
  auto z = detail::cocycle_space(m, ext);
  const std::size_t dw = wider.dimension();
  EchelonBasis span(k, dw * wider.generators().size());
  for (std::size_t i = 0; i < dw; ++i) {
    Vector e = zero_vector(k, dw);
    e[i] = Scalar::one(k);
    span.insert(detail::coboundary_on_generators(wider, e));
  }
  H1Result out;
  for (const auto& c : z) {
    if (!span.insert(detail::transfer(m, wider, c))) continue;
    CohomologyClass cls;
    for (std::size_t t = 0; t < m.group_order(); ++t) cls.values.push_back(m.element(ext[t].apply(c)));
    out.representatives.push_back(std::move(cls));
  }
  out.dimension = out.representatives.size();
  return out;
}

inline H1Result h1(const GModuleSlice& m) { return h1(m, m); }

/// Some φ in the slice with σφ − φ = c(σ) for every σ.
inline std::optional<FreeModuleElement> solve_coboundary(const CohomologyClass& c, const GModuleSlice& m) {
  if (!is_cocycle(c, m)) throw std::invalid_argument("cochain does not satisfy the cocycle identity");
  const Field& k = m.field();
  const std::size_t d = m.dimension(), ng = m.generators().size();
  Matrix a(k, d * ng, d);
  Vector b;
  for (std::size_t gi = 0; gi < ng; ++gi) {
    auto g = m.generators()[gi];
    const auto& act = m.action(g);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(gi * d + i, j) = act(i, j) - (i == j ? Scalar::one(k) : Scalar::zero(k));
    auto v = m.coordinates(c.values[g]);
    b.insert(b.end(), v->begin(), v->end());
  }
  auto x = solve(a, b);
  if (!x) return std::nullopt;
  return m.element(*x);
}

/// H² from bar cochains G×G → M on the slice.
inline H1Result h2(const GModuleSlice& m) {
  const Field& k = m.field();
  const std::size_t d = m.dimension(), n = m.group_order();
  auto idx2 = [&](std::size_t a, std::size_t b, std::size_t i) { return (a * n + b) * d + i; };
  // d¹f(σ,τ) = σf(τ) − f(στ) + f(σ)
  Matrix d1(k, n * n * d, n * d);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t i = 0; i < d; ++i) {
        auto r = idx2(s, t, i);
        for (std::size_t j = 0; j < d; ++j) d1(r, t * d + j) += m.action(s)(i, j);
        d1(r, m.multiply(s, t) * d + i) -= Scalar::one(k);
        d1(r, s * d + i) += Scalar::one(k);
      }
  // d²c(σ,τ,ρ) = σc(τ,ρ) − c(στ,ρ) + c(σ,τρ) − c(σ,τ)
  Matrix d2(k, n * n * n * d, n * n * d);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t i = 0; i < d; ++i) {
          auto r = ((s * n + t) * n + u) * d + i;
          for (std::size_t j = 0; j < d; ++j) d2(r, idx2(t, u, j)) += m.action(s)(i, j);
          d2(r, idx2(m.multiply(s, t), u, i)) -= Scalar::one(k);
          d2(r, idx2(s, m.multiply(t, u), i)) += Scalar::one(k);
          d2(r, idx2(s, t, i)) -= Scalar::one(k);
        }
  EchelonBasis span(k, n * n * d);
  for (std::size_t c = 0; c < n * d; ++c) span.insert(d1.column(c));
  H1Result out;
  for (const auto& z : nullspace(d2)) {
    if (!span.insert(z)) continue;
    CohomologyClass cls;
    cls.degree = 2;
    for (std::size_t p = 0; p < n * n; ++p)
      cls.values.push_back(m.element(Vector(z.begin() + static_cast<long>(p * d), z.begin() + static_cast<long>((p + 1) * d))));
    out.representatives.push_back(std::move(cls));
  }
  out.dimension = out.representatives.size();
  return out;
}

}  // namespace eqdef
