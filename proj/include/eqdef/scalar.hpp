#pragma once

// Exact scalars: the rationals (arbitrary precision, via GMP) and prime
// fields F_p with p < 2^31.

#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace eqdef {

class ContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The base field k: characteristic 0 means ℚ, otherwise F_p.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field{}; }
  static Field prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (p >= (1ULL << 31)) throw std::invalid_argument("prime too large");
    Field f;
    f.p_ = p;
    return f;
  }

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  /// True iff n is nonzero in k.
  bool invertible(std::uint64_t n) const { return p_ == 0 ? n != 0 : n % p_ != 0; }

  std::string name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint64_t p_ = 0;
};

class Scalar {
 public:
  Scalar() : p_(0), v_(mpq_class(0)) {}
  Scalar(const Field& k, long n) : p_(k.characteristic()) {
    if (p_ == 0) {
      v_ = mpq_class(n);
    } else {
      long long r = static_cast<long long>(n) % static_cast<long long>(p_);
      if (r < 0) r += static_cast<long long>(p_);
      v_ = static_cast<std::uint64_t>(r);
    }
  }
  Scalar(const Field& k, const mpq_class& q) : p_(k.characteristic()) {
    if (p_ == 0) {
      mpq_class c = q;
      c.canonicalize();
      v_ = c;
    } else {
      mpz_class num = q.get_num() % static_cast<unsigned long>(p_);
      mpz_class den = q.get_den() % static_cast<unsigned long>(p_);
      if (den == 0) throw ArithmeticError("denominator vanishes in F" + std::to_string(p_));
      if (num < 0) num += static_cast<unsigned long>(p_);
      std::uint64_t n = num.get_ui(), d = den.get_ui();
      v_ = mulmod(n, inverse_mod(d, p_), p_);
    }
  }

  static Scalar zero(const Field& k) { return Scalar(k, 0); }
  static Scalar one(const Field& k) { return Scalar(k, 1); }

  Field field() const { return p_ == 0 ? Field::rationals() : Field::prime(p_); }
  std::uint64_t characteristic() const { return p_; }

  bool is_zero() const {
    return p_ == 0 ? std::get<mpq_class>(v_) == 0 : std::get<std::uint64_t>(v_) == 0;
  }
  bool is_one() const {
    return p_ == 0 ? std::get<mpq_class>(v_) == 1 : std::get<std::uint64_t>(v_) == 1;
  }

  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }

  Scalar operator-() const {
    Scalar r = *this;
    if (p_ == 0)
      r.v_ = mpq_class(-rational());
    else
      r.v_ = residue() == 0 ? 0 : p_ - residue();
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (p_ == 0)
      std::get<mpq_class>(v_) += o.rational();
    else
      v_ = (residue() + o.residue()) % p_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    if (p_ == 0)
      std::get<mpq_class>(v_) -= o.rational();
    else
      v_ = (residue() + p_ - o.residue()) % p_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (p_ == 0)
      std::get<mpq_class>(v_) *= o.rational();
    else
      v_ = mulmod(residue(), o.residue(), p_);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero");
    Scalar r = *this;
    if (p_ == 0)
      r.v_ = mpq_class(1 / rational());
    else
      r.v_ = inverse_mod(residue(), p_);
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

  /// Exact text: integers, `a/b` for rationals, residues in [0, p).
  std::string str() const {
    if (p_ != 0) return std::to_string(residue());
    return rational().get_str();
  }
  /// True when the rendered form carries a leading minus sign.
  bool is_negative() const { return p_ == 0 && rational() < 0; }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

  std::size_t hash() const {
    if (p_ != 0) return std::hash<std::uint64_t>{}(residue());
    return std::hash<std::string>{}(rational().get_str());
  }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }
  static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
      if (e & 1) r = mulmod(r, a, p);
      a = mulmod(a, a, p);
      e >>= 1;
    }
    return r;
  }
  static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw ArithmeticError("division by zero in F" + std::to_string(p));
    return powmod(a, p - 2, p);
  }

 private:
  void check(const Scalar& o) const {
    if (o.p_ != p_) throw ContextError("scalar field mismatch");
  }

  std::uint64_t p_;
  std::variant<mpq_class, std::uint64_t> v_;
};

}  // namespace eqdef
