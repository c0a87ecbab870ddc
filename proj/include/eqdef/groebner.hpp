#pragma once

// Buchberger's algorithm for ideals and for submodules of free modules P^r,
// P = k[x_1..x_n], with the Gebauer–Möller pair criteria.
//
// Module monomials are ordered position-over-term: the lowest nonzero
// position dominates, and within a position the ring order decides. Listing
// "eliminated" coordinates first therefore turns a module basis into an
// elimination basis, which is how kernels and cofactor lifts are computed.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "eqdef/polynomial.hpp"

namespace eqdef {

/// An element of P^r (or of B^r with B = P/I when components are reduced).
using FreeModuleElement = std::vector<Polynomial>;

inline FreeModuleElement zero_element(const RingPtr& ring, std::size_t rank) {
  return FreeModuleElement(rank, Polynomial(ring));
}

inline FreeModuleElement unit_element(const RingPtr& ring, std::size_t rank, std::size_t i) {
  auto v = zero_element(ring, rank);
  v[i] = Polynomial::constant(ring, 1);
  return v;
}

inline bool is_zero(const FreeModuleElement& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

inline FreeModuleElement operator+(FreeModuleElement a, const FreeModuleElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline FreeModuleElement operator-(FreeModuleElement a, const FreeModuleElement& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline FreeModuleElement operator*(const Polynomial& f, FreeModuleElement a) {
  for (auto& c : a) c = f * c;
  return a;
}
inline FreeModuleElement operator*(const Scalar& c, FreeModuleElement a) {
  for (auto& x : a) x *= c;
  return a;
}

namespace detail {

inline std::optional<std::size_t> lead_position(const FreeModuleElement& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return std::nullopt;
}

struct Basis {
  RingPtr ring;
  std::size_t rank = 0;
  std::vector<FreeModuleElement> elems;
  std::vector<std::size_t> pos;  // leading position of each element
  std::vector<bool> single;      // element has exactly one nonzero component

  const Monomial& lm(std::size_t i) const { return elems[i][pos[i]].leading_monomial(); }
  const Scalar& lc(std::size_t i) const { return elems[i][pos[i]].leading_coeff(); }

  std::size_t add(FreeModuleElement v) {
    auto p = *lead_position(v);
    std::size_t nz = 0;
    for (const auto& c : v) nz += !c.is_zero();
    elems.push_back(std::move(v));
    pos.push_back(p);
    single.push_back(nz == 1);
    return elems.size() - 1;
  }
};

/// Full reduction of v by the active elements of `basis`.
inline FreeModuleElement reduce(FreeModuleElement v, const Basis& basis, const std::vector<std::size_t>& active) {
  const RingPtr& ring = basis.ring;
  FreeModuleElement result = zero_element(ring, v.size());
  std::size_t p = 0;
  while (p < v.size()) {
    if (v[p].is_zero()) {
      ++p;
      continue;
    }
    const Term& lt = v[p].leading_term();
    bool reduced = false;
    for (auto i : active) {
      if (basis.pos[i] != p || !basis.lm(i).divides(lt.mono)) continue;
      Scalar c = lt.coeff / basis.lc(i);
      Monomial m = basis.lm(i).cofactor_in(lt.mono);
      const auto& g = basis.elems[i];
      for (std::size_t j = p; j < v.size(); ++j)
        if (!g[j].is_zero()) v[j].add_scaled(g[j], -c, m);
      reduced = true;
      break;
    }
    if (!reduced) result[p].append_lower(v[p].pop_leading());
  }
  for (std::size_t j = 0; j < result.size(); ++j)
    if (!result[j].ring()) result[j] = Polynomial(ring);
  return result;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

/// Buchberger with Gebauer–Möller updates; returns the reduced, monic,
/// canonically sorted basis.
inline std::vector<FreeModuleElement> buchberger(const RingPtr& ring, std::size_t rank,
                                                 const std::vector<FreeModuleElement>& gens) {
  Basis basis{ring, rank, {}, {}, {}};
  std::vector<std::size_t> active;
  std::vector<Pair> pairs;
  const auto& ord = ring->order();

  auto coprime_pair = [&](std::size_t a, std::size_t b) {
    return basis.single[a] && basis.single[b] && coprime(basis.lm(a), basis.lm(b));
  };

  auto update = [&](FreeModuleElement h_elem) {
    std::size_t h = basis.add(std::move(h_elem));
    const Monomial& lmh = basis.lm(h);
    std::vector<Pair> candidates;
    for (auto g : active)
      if (basis.pos[g] == basis.pos[h]) candidates.push_back({h, g, lcm(lmh, basis.lm(g))});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const auto& c = candidates[a];
      bool keep = coprime_pair(c.i, c.j);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b)
          if (candidates[b].lcm.divides(c.lcm)) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (kept[b].lcm.divides(c.lcm)) keep = false;
      }
      if (keep) kept.push_back(c);
    }
    std::vector<Pair> fresh;
    for (auto& c : kept)
      if (!coprime_pair(c.i, c.j)) fresh.push_back(std::move(c));
    std::vector<Pair> old;
    for (auto& pr : pairs) {
      bool drop = basis.pos[pr.i] == basis.pos[h] && lmh.divides(pr.lcm) &&
                  lcm(basis.lm(pr.i), lmh) != pr.lcm && lcm(basis.lm(pr.j), lmh) != pr.lcm;
      if (!drop) old.push_back(std::move(pr));
    }
    pairs = std::move(old);
    for (auto& f : fresh) pairs.push_back(std::move(f));
    std::vector<std::size_t> next;
    for (auto g : active)
      if (!(basis.pos[g] == basis.pos[h] && lmh.divides(basis.lm(g)))) next.push_back(g);
    next.push_back(h);
    active = std::move(next);
  };

  for (const auto& g : gens) {
    if (g.size() != rank) throw ContextError("module element rank mismatch");
    auto r = reduce(g, basis, active);
    if (!is_zero(r)) update(std::move(r));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      int c = ord.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    Pair pr = *best;
    pairs.erase(best);
    const auto& gi = basis.elems[pr.i];
    const auto& gj = basis.elems[pr.j];
    Monomial mi = basis.lm(pr.i).cofactor_in(pr.lcm);
    Monomial mj = basis.lm(pr.j).cofactor_in(pr.lcm);
    Scalar ci = basis.lc(pr.i).inverse(), cj = basis.lc(pr.j).inverse();
    FreeModuleElement s = zero_element(ring, rank);
    for (std::size_t k = 0; k < rank; ++k) {
      s[k].add_scaled(gi[k], ci, mi);
      s[k].add_scaled(gj[k], -cj, mj);
    }
    auto h = reduce(std::move(s), basis, active);
    if (!is_zero(h)) update(std::move(h));
  }

  // minimalize, interreduce, normalize
  std::vector<std::size_t> minimal;
  for (auto a : active) {
    bool redundant = false;
    for (auto b : active) {
      if (a == b || basis.pos[a] != basis.pos[b]) continue;
      if (basis.lm(b).divides(basis.lm(a)) && (basis.lm(b) != basis.lm(a) || b < a)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(a);
  }
  std::vector<FreeModuleElement> out;
  for (auto a : minimal) {
    std::vector<std::size_t> others;
    for (auto b : minimal)
      if (b != a) others.push_back(b);
    FreeModuleElement g = basis.elems[a];
    std::size_t p = basis.pos[a];
    // keep the leading term, reduce everything else
    Term lead = g[p].pop_leading();
    auto tail = reduce(std::move(g), basis, others);
    FreeModuleElement r = zero_element(ring, rank);
    r[p] = Polynomial::term(ring, lead.coeff, lead.mono);
    r = r + tail;
    Scalar inv = lead.coeff.inverse();
    for (auto& c : r) c *= inv;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [&](const FreeModuleElement& a, const FreeModuleElement& b) {
    auto pa = *lead_position(a), pb = *lead_position(b);
    if (pa != pb) return pa < pb;
    return ord.compare(a[pa].leading_monomial(), b[pb].leading_monomial()) < 0;
  });
  return out;
}

}  // namespace detail

/// A reduced Gröbner basis of a submodule of P^r.
class ModuleGroebnerBasis {
 public:
  ModuleGroebnerBasis() = default;
  ModuleGroebnerBasis(RingPtr ring, std::size_t rank, std::vector<FreeModuleElement> elems)
      : ring_(std::move(ring)), rank_(rank), elems_(std::move(elems)) {
    basis_ = detail::Basis{ring_, rank_, {}, {}, {}};
    for (const auto& e : elems_) basis_.add(e);
    for (std::size_t i = 0; i < elems_.size(); ++i) active_.push_back(i);
  }

  static ModuleGroebnerBasis compute(const RingPtr& ring, std::size_t rank, const std::vector<FreeModuleElement>& gens) {
    for (const auto& g : gens)
      for (const auto& c : g) c.check(Polynomial(ring));
    return ModuleGroebnerBasis(ring, rank, detail::buchberger(ring, rank, gens));
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<FreeModuleElement>& elements() const { return elems_; }
  std::size_t lead_position(std::size_t i) const { return basis_.pos[i]; }
  const Monomial& lead_monomial(std::size_t i) const { return basis_.lm(i); }

  FreeModuleElement normal_form(const FreeModuleElement& v) const {
    if (v.size() != rank_) throw ContextError("module element rank mismatch");
    return detail::reduce(v, basis_, active_);
  }
  bool contains(const FreeModuleElement& v) const { return is_zero(normal_form(v)); }

  /// True iff the monomial at `pos` is not divisible by any leading term.
  bool is_standard(std::size_t pos, const Monomial& m) const {
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (basis_.pos[i] == pos && basis_.lm(i).divides(m)) return false;
    return true;
  }

 private:
  RingPtr ring_;
  std::size_t rank_ = 0;
  std::vector<FreeModuleElement> elems_;
  detail::Basis basis_;
  std::vector<std::size_t> active_;
};

/// A reduced Gröbner basis of an ideal of P.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  explicit GroebnerBasis(ModuleGroebnerBasis m) : m_(std::move(m)) {
    for (const auto& e : m_.elements()) gens_.push_back(e[0]);
  }

  const RingPtr& ring() const { return m_.ring(); }
  const MonomialOrder& order() const { return m_.ring()->order(); }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const ModuleGroebnerBasis& as_module() const { return m_; }

  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero(); }

  Polynomial normal_form(const Polynomial& f) const {
    if (!f.ring()) return Polynomial(ring());
    f.check(Polynomial(ring()));
    return m_.normal_form({f})[0];
  }
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

  bool is_standard(const Monomial& m) const { return m_.is_standard(0, m); }

 private:
  ModuleGroebnerBasis m_;
  std::vector<Polynomial> gens_;
};

/// Maps f into a ring with the same variable names (in any arrangement).
inline Polynomial change_ring(const Polynomial& f, const RingPtr& target) {
  std::vector<Polynomial> images;
  for (const auto& name : f.ring()->names()) {
    auto idx = target->index_of(name);
    if (!idx) throw ContextError("variable '" + name + "' missing in target context");
    images.push_back(Polynomial::variable(target, *idx));
  }
  if (images.empty()) return Polynomial::constant(target, f.constant_term());
  return substitute(f, images);
}

/// Reduced Gröbner basis of the ideal generated by gens, in gens' context.
inline GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  std::vector<FreeModuleElement> vs;
  for (const auto& g : gens) {
    g.check(Polynomial(ring));
    if (!g.is_zero()) vs.push_back({g});
  }
  return GroebnerBasis(ModuleGroebnerBasis::compute(ring, 1, vs));
}

/// Same, for a monomial order other than the context's; the basis lives in a
/// fresh context carrying `order`.
inline GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  if (order == ring->order()) return buchberger(ring, gens);
  auto target = Ring::make(ring->field(), ring->names(), order);
  std::vector<Polynomial> moved;
  for (const auto& g : gens) moved.push_back(change_ring(g, target));
  return buchberger(target, moved);
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) { return gb.normal_form(f); }

/// Elimination data for expressing members of a submodule in terms of a fixed
/// generating list, and for its syzygies.
class SubmoduleLift {
 public:
  SubmoduleLift() = default;
  SubmoduleLift(const RingPtr& ring, std::size_t rank, std::vector<FreeModuleElement> gens)
      : ring_(ring), rank_(rank), gens_(std::move(gens)) {
    const std::size_t s = gens_.size();
    std::vector<FreeModuleElement> aug;
    for (std::size_t k = 0; k < s; ++k) {
      auto v = zero_element(ring, rank + s);
      for (std::size_t i = 0; i < rank; ++i) v[i] = gens_[k][i];
      v[rank + k] = Polynomial::constant(ring, 1);
      aug.push_back(std::move(v));
    }
    gb_ = ModuleGroebnerBasis::compute(ring, rank + s, aug);
  }

  const std::vector<FreeModuleElement>& generators() const { return gens_; }

  /// Cofactors a with v = Σ a_k gens_k, or nullopt if v is not a member.
  std::optional<std::vector<Polynomial>> lift(const FreeModuleElement& v) const {
    const std::size_t s = gens_.size();
    auto w = zero_element(ring_, rank_ + s);
    for (std::size_t i = 0; i < rank_; ++i) w[i] = v[i];
    auto r = gb_.normal_form(w);
    for (std::size_t i = 0; i < rank_; ++i)
      if (!r[i].is_zero()) return std::nullopt;
    std::vector<Polynomial> a;
    for (std::size_t k = 0; k < s; ++k) a.push_back(-r[rank_ + k]);
    return a;
  }

  /// Generators of the syzygy module { a : Σ a_k gens_k = 0 }.
  std::vector<FreeModuleElement> syzygies() const {
    std::vector<FreeModuleElement> out;
    for (std::size_t i = 0; i < gb_.elements().size(); ++i) {
      if (gb_.lead_position(i) < rank_) continue;
      const auto& e = gb_.elements()[i];
      out.emplace_back(e.begin() + static_cast<long>(rank_), e.end());
    }
    return out;
  }

 private:
  RingPtr ring_;
  std::size_t rank_ = 0;
  std::vector<FreeModuleElement> gens_;
  ModuleGroebnerBasis gb_;
};

/// Cofactors expressing f in terms of gens (ideal membership with witness).
inline std::optional<std::vector<Polynomial>> lift_ideal_member(const Polynomial& f, const std::vector<Polynomial>& gens) {
  std::vector<FreeModuleElement> g;
  for (const auto& x : gens) g.push_back({x});
  return SubmoduleLift(f.ring(), 1, g).lift({f});
}

/// A matrix of polynomials, row-major: rows × cols.
using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Generators of { v ∈ B^r : M v ≡ 0 mod I } for a c × r matrix M over
/// B = P / I, computed from the syzygies of M's columns together with I·e_j.
inline std::vector<FreeModuleElement> module_kernel(const PolyMatrix& m, std::size_t cols, const GroebnerBasis& modulus) {
  const RingPtr& ring = modulus.ring();
  const std::size_t c = m.size();
  std::vector<FreeModuleElement> gens;
  for (std::size_t j = 0; j < cols; ++j) {
    FreeModuleElement col;
    for (std::size_t i = 0; i < c; ++i) col.push_back(m[i][j]);
    gens.push_back(std::move(col));
  }
  for (std::size_t i = 0; i < c; ++i)
    for (const auto& g : modulus.generators()) {
      auto v = zero_element(ring, c);
      v[i] = g;
      gens.push_back(std::move(v));
    }
  if (c == 0) {
    std::vector<FreeModuleElement> out;
    for (std::size_t j = 0; j < cols; ++j) out.push_back(unit_element(ring, cols, j));
    return out;
  }
  SubmoduleLift lift(ring, c, gens);
  std::vector<FreeModuleElement> out;
  for (const auto& syz : lift.syzygies()) {
    FreeModuleElement v;
    for (std::size_t j = 0; j < cols; ++j) v.push_back(modulus.normal_form(syz[j]));
    if (is_zero(v)) continue;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

/// M = B^rank / ⟨relations⟩ with B = P / base.
struct ModulePresentation {
  std::size_t rank = 0;
  std::vector<FreeModuleElement> relations;
  GroebnerBasis base;

  /// Gröbner basis of relations + base·e_j inside P^rank.
  ModuleGroebnerBasis submodule_basis() const {
    const RingPtr& ring = base.ring();
    std::vector<FreeModuleElement> gens = relations;
    for (std::size_t j = 0; j < rank; ++j)
      for (const auto& g : base.generators()) {
        auto v = zero_element(ring, rank);
        v[j] = g;
        gens.push_back(std::move(v));
      }
    return ModuleGroebnerBasis::compute(ring, rank, gens);
  }
};

struct BasisMonomial {
  std::size_t pos;
  Monomial mono;
  friend bool operator==(const BasisMonomial&, const BasisMonomial&) = default;
};

struct QuotientBasis {
  bool finite = true;
  long bound = -1;  // degree cap used when !finite
  std::vector<BasisMonomial> basis;
  ModuleGroebnerBasis gb;

  std::size_t dimension() const { return basis.size(); }
};

namespace detail {

/// All monomials in n variables of total degree ≤ d, ascending by degree.
inline std::vector<Monomial> monomials_up_to(std::size_t n, long d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  out.push_back(Monomial(n));
  std::size_t begin = 0;
  for (long deg = 1; deg <= d; ++deg) {
    std::size_t end = out.size();
    std::set<Monomial> next;
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t v = 0; v < n; ++v) {
        Monomial m = out[i];
        m.exp[v] += 1;
        next.insert(std::move(m));
      }
    for (auto& m : next) out.push_back(m);
    begin = end;
  }
  return out;
}

}  // namespace detail

/// Standard monomials of the quotient. Exact when finite; otherwise all
/// standard monomials of degree ≤ trunc.
inline QuotientBasis quotient_basis(const ModulePresentation& m, long trunc) {
  QuotientBasis q;
  q.gb = m.submodule_basis();
  const RingPtr& ring = m.base.ring();
  const std::size_t n = ring->nvars();
  long cap = 0;
  for (std::size_t p = 0; p < m.rank; ++p) {
    // pure-power leading terms bound each variable
    std::vector<long> bound(n, -1);
    bool killed = false;
    for (std::size_t i = 0; i < q.gb.elements().size(); ++i) {
      if (q.gb.lead_position(i) != p) continue;
      const auto& lm = q.gb.lead_monomial(i);
      if (lm.is_one()) killed = true;
      std::size_t support = 0, var = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (lm[v]) {
          ++support;
          var = v;
        }
      if (support == 1 && (bound[var] < 0 || static_cast<long>(lm[var]) < bound[var])) bound[var] = lm[var];
    }
    if (killed) continue;
    bool finite_here = std::all_of(bound.begin(), bound.end(), [](long b) { return b >= 0; });
    if (finite_here) {
      long s = 0;
      for (auto b : bound) s += b - 1;
      cap = std::max(cap, s);
    } else {
      q.finite = false;
    }
  }
  long limit = q.finite ? cap : std::max(trunc, 0L);
  if (!q.finite) q.bound = limit;
  auto monos = detail::monomials_up_to(n, limit);
  const auto& ord = ring->order();
  for (std::size_t p = 0; p < m.rank; ++p) {
    std::vector<Monomial> here;
    for (const auto& mono : monos)
      if (q.gb.is_standard(p, mono)) here.push_back(mono);
    std::sort(here.begin(), here.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) < 0; });
    for (auto& mono : here) q.basis.push_back({p, std::move(mono)});
  }
  return q;
}

struct RegularSequenceCertificate {
  bool regular = false;
  long dimension = -1;  // Krull dimension of k[x]/(gens); -1 for the zero ring
  std::size_t nvars = 0;
  std::size_t ngens = 0;
};

/// Krull dimension of P / (gens) from the leading-term ideal: the largest set
/// of variables containing the support of no leading monomial.
inline long krull_dimension(const GroebnerBasis& gb) {
  const std::size_t n = gb.ring()->nvars();
  if (gb.is_unit()) return -1;
  std::vector<std::uint64_t> supports;
  for (const auto& g : gb.generators()) {
    std::uint64_t s = 0;
    const auto& lm = g.leading_monomial();
    for (std::size_t v = 0; v < n; ++v)
      if (lm[v]) s |= (1ULL << v);
    supports.push_back(s);
  }
  if (n > 24) throw std::invalid_argument("too many variables for dimension count");
  long best = 0;
  for (std::uint64_t set = 0; set < (1ULL << n); ++set) {
    long size = __builtin_popcountll(set);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(), [&](auto s) { return (s & ~set) == 0; });
    if (independent) best = size;
  }
  return best;
}

/// Certificate that gens cut out codimension = number of generators.
inline RegularSequenceCertificate is_regular_sequence(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  RegularSequenceCertificate c;
  c.nvars = ring->nvars();
  c.ngens = gens.size();
  auto gb = buchberger(ring, gens);
  c.dimension = krull_dimension(gb);
  c.regular = c.dimension >= 0 && c.dimension == static_cast<long>(c.nvars) - static_cast<long>(c.ngens);
  return c;
}

}  // namespace eqdef
