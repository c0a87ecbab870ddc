#pragma once

// Local ramification: the invariant part of Ext¹(Ω, R) at a point whose
// cyclic stabilizer of order m acts on the uniformizer by t ↦ ζt, over the
// truncated series ring R = k[t]/(t^N).

#include <stdexcept>
#include <string>
#include <vector>

#include "eqdef/scalar.hpp"

namespace eqdef {

class RamificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A primitive m-th root of unity in k, or an error when k has none.
inline Scalar primitive_root_of_unity(const Field& k, long m) {
  if (m < 1) throw RamificationError("root of unity order must be positive");
  if (k.is_rational()) {
    if (m == 1) return Scalar(k, 1L);
    if (m == 2) return Scalar(k, -1L);
    throw RamificationError("no primitive " + std::to_string(m) + "-th root of unity in Q");
  }
  const auto p = static_cast<long>(k.characteristic());
  if ((p - 1) % m != 0)
    throw RamificationError("no primitive " + std::to_string(m) + "-th root of unity in " + k.name() + ": " +
                            std::to_string(m) + " does not divide " + std::to_string(p - 1));
  for (long c = 1; c < p; ++c) {
    Scalar z(k, c), w(k, 1L);
    long ord = 0;
    do {
      w = w * z;
      ++ord;
    } while (!(w == Scalar(k, 1L)));
    if (ord == m) return z;
  }
  throw RamificationError("no primitive root of unity found");
}

/// R·e with σ(t^i e) = ζ^{i+w} t^i e, R = k[t]/(t^N).
struct TruncatedSeriesModule {
  long modulus = 1;
  long weight = 0;
  long order = 1;

  /// Weight of the basis element t^i e, reduced mod m.
  long weight_of(long i) const { return (((i + weight) % order) + order) % order; }

  long invariant_count() const {
    long n = 0;
    for (long i = 0; i < modulus; ++i) n += weight_of(i) == 0;
    return n;
  }
};

/// m − 1, the different of a tamely ramified point with stabilizer of order m.
inline long tame_different(long m) {
  if (m < 1) throw RamificationError("stabilizer order must be positive");
  return m - 1;
}

/// Ext¹(R/(t^d) dt, R) with its induced action, from the resolution
/// 0 → R e₁ → R e₀ → R/(t^d) dt → 0, e₀ ↦ dt (weight 1), e₁ ↦ t^d e₀
/// (weight d + 1). Dualizing leaves (R/(t^d)) e₁*, with e₁* of weight −(d + 1).
inline TruncatedSeriesModule local_ext1_module(long d, long m) {
  return {d, -(d + 1), m};
}

inline long local_ext1_invariants(long d, long m, const Field& k) {
  if (d < 0) throw RamificationError("different must be non-negative");
  if (m < 2) throw RamificationError("stabilizer order must be at least 2");
  primitive_root_of_unity(k, m);
  if (d == 0) return 0;
  return local_ext1_module(d, m).invariant_count();
}

}  // namespace eqdef
