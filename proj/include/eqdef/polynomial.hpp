#pragma once

// Sparse multivariate polynomials with exact coefficients.
//
// A Ring is an immutable variable context (field, variable names, monomial
// order) shared by pointer identity. Polynomials from different rings never
// mix; every binary operation checks the context and throws ContextError.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eqdef/scalar.hpp"

namespace eqdef {

struct Monomial {
  std::vector<std::uint32_t> exp;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exp(std::move(e)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exp[i] = power;
    return m;
  }

  std::size_t size() const { return exp.size(); }
  std::uint32_t operator[](std::size_t i) const { return exp[i]; }

  std::uint64_t degree() const { return std::accumulate(exp.begin(), exp.end(), std::uint64_t{0}); }
  bool is_one() const {
    return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exp.size(); ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }

  /// o / this, assuming divides(o).
  Monomial cofactor_in(const Monomial& o) const {
    Monomial r(exp.size());
    for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] = o.exp[i] - exp[i];
    return r;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exp[i] = a.exp[i] + b.exp[i];
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exp[i] && b.exp[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

enum class OrderKind { grevlex, lex };

/// A monomial order over a ranked variable list. `ranking[r]` is the variable
/// at rank r; rank 0 is the smallest variable.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::vector<std::size_t> ranking;

  static MonomialOrder grevlex(std::size_t n) { return {OrderKind::grevlex, identity(n)}; }
  static MonomialOrder lex(std::size_t n) { return {OrderKind::lex, identity(n)}; }

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    const std::size_t n = ranking.size();
    if (kind == OrderKind::grevlex) {
      auto da = a.degree(), db = b.degree();
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t r = 0; r < n; ++r) {
        auto v = ranking[r];
        if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
      }
      return 0;
    }
    for (std::size_t r = n; r-- > 0;) {
      auto v = ranking[r];
      if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
    }
    return 0;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  static std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> r(n);
    std::iota(r.begin(), r.end(), 0);
    return r;
  }
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  Ring(Field k, std::vector<std::string> names, MonomialOrder order)
      : field_(k), names_(std::move(names)), order_(std::move(order)) {
    if (order_.ranking.size() != names_.size()) throw std::invalid_argument("order ranking does not match variable count");
  }

  static RingPtr make(Field k, std::vector<std::string> names) {
    auto n = names.size();
    return std::make_shared<const Ring>(k, std::move(names), MonomialOrder::grevlex(n));
  }
  static RingPtr make(Field k, std::vector<std::string> names, MonomialOrder order) {
    return std::make_shared<const Ring>(k, std::move(names), std::move(order));
  }

  const Field& field() const { return field_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t nvars() const { return names_.size(); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  Scalar zero() const { return Scalar::zero(field_); }
  Scalar one() const { return Scalar::one(field_); }
  Scalar scalar(long n) const { return Scalar(field_, n); }

 private:
  Field field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

struct Term {
  Monomial mono;
  Scalar coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const RingPtr& ring, const Scalar& c) {
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({Monomial(ring->nvars()), c});
    return p;
  }
  static Polynomial constant(const RingPtr& ring, long c) { return constant(ring, ring->scalar(c)); }
  static Polynomial variable(const RingPtr& ring, std::size_t i) {
    return term(ring, ring->one(), Monomial::variable(ring->nvars(), i));
  }
  static Polynomial term(const RingPtr& ring, const Scalar& c, Monomial m) {
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
    return p;
  }
  /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
  static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms) {
    Polynomial p(ring);
    const auto& ord = ring->order();
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
        p.terms_.back().coeff += t.coeff;
      else
        p.terms_.push_back(std::move(t));
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    }
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }

  /// Total degree; -1 for the zero polynomial.
  long degree() const {
    long d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.mono.degree()));
    return d;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  Scalar coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return ring_->zero();
  }

  Scalar constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return ring_ ? ring_->zero() : Scalar();
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  /// this += c * m * g, merged in one pass.
  Polynomial& add_scaled(const Polynomial& g, const Scalar& c, const Monomial& m) {
    if (c.is_zero() || g.is_zero()) return *this;
    check(g);
    const auto& ord = ring_->order();
    std::vector<Term> out;
    out.reserve(terms_.size() + g.terms_.size());
    auto a = terms_.begin();
    auto b = g.terms_.begin();
    while (a != terms_.end() || b != g.terms_.end()) {
      if (b == g.terms_.end()) {
        out.push_back(std::move(*a++));
        continue;
      }
      Monomial bm = b->mono * m;
      if (a == terms_.end()) {
        out.push_back({std::move(bm), b->coeff * c});
        ++b;
        continue;
      }
      int cmp = ord.compare(a->mono, bm);
      if (cmp > 0) {
        out.push_back(std::move(*a++));
      } else if (cmp < 0) {
        out.push_back({std::move(bm), b->coeff * c});
        ++b;
      } else {
        Scalar s = a->coeff + b->coeff * c;
        if (!s.is_zero()) out.push_back({std::move(a->mono), s});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  Polynomial& operator+=(const Polynomial& g) {
    adopt(g);
    return add_scaled(g, ring_->one(), Monomial(ring_->nvars()));
  }
  Polynomial& operator-=(const Polynomial& g) {
    adopt(g);
    return add_scaled(g, -ring_->one(), Monomial(ring_->nvars()));
  }
  Polynomial& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    const Polynomial& small = a.size() <= b.size() ? a : b;
    const Polynomial& big = a.size() <= b.size() ? b : a;
    for (const auto& t : small.terms_) r.add_scaled(big, t.coeff, t.mono);
    return r;
  }
  Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, 1);
    Polynomial b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Multiplies by c * m.
  Polynomial scaled(const Scalar& c, const Monomial& m) const {
    Polynomial r(ring_);
    return r.add_scaled(*this, c, m);
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * leading_coeff().inverse();
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.ring_ != b.ring_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono && a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  /// Removes and returns the leading term.
  Term pop_leading() {
    Term t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
  }
  /// Appends a term smaller than every present term; the caller guarantees order.
  void append_lower(Term t) { terms_.push_back(std::move(t)); }

  /// Sets the ring of a default-constructed zero polynomial.
  void adopt(const Polynomial& g) {
    if (!ring_) ring_ = g.ring_;
  }

  void check(const Polynomial& g) const {
    if (ring_ && g.ring_ && ring_ != g.ring_) throw ContextError("polynomials live in different variable contexts");
  }

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Ring-homomorphic evaluation x_i ↦ images[i]. The images share one context,
/// which may differ from the context of f.
inline Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
  if (!f.ring()) throw ContextError("polynomial without context");
  if (images.size() != f.ring()->nvars()) throw ContextError("substitution must give an image for every variable");
  if (images.empty()) return f;
  RingPtr target = images[0].ring();
  for (const auto& im : images)
    if (im.ring() != target) throw ContextError("substitution images live in different contexts");
  if (target->field() != f.ring()->field()) throw ContextError("substitution changes the base field");

  const std::size_t n = images.size();
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(Polynomial::constant(target, 1));
    while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
    return pw[e];
  };
  Polynomial result(target);
  for (const auto& t : f.terms()) {
    Polynomial m = Polynomial::constant(target, t.coeff);
    for (std::size_t i = 0; i < n && !m.is_zero(); ++i)
      if (t.mono[i]) m *= power(i, t.mono[i]);
    result += m;
  }
  return result;
}

inline Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
  return substitute(f, std::span<const Polynomial>(images));
}

/// Sum of the terms of total degree exactly d.
inline Polynomial degree_slice(const Polynomial& f, long d) {
  std::vector<Term> kept;
  for (const auto& t : f.terms())
    if (static_cast<long>(t.mono.degree()) == d) kept.push_back(t);
  return Polynomial::from_terms(f.ring(), std::move(kept));
}

inline std::string render_monomial(const Ring& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += ring.names()[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

/// Canonical text: descending order, explicit signs, `^` powers, `*` between
/// factors; "0" for the zero polynomial.
inline std::string render(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    bool neg = t.coeff.is_negative();
    Scalar mag = neg ? -t.coeff : t.coeff;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono = render_monomial(*f.ring(), t.mono);
    if (mono.empty())
      out += mag.str();
    else if (mag.is_one())
      out += mono;
    else
      out += mag.str() + "*" + mono;
  }
  return out;
}

}  // namespace eqdef
