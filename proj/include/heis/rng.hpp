#pragma once

#include "heis/scalar.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace heis {

/// Deterministic random stream. Streams are keyed by (seed, name) so that
/// suites running concurrently still reproduce bit-for-bit.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream)
      : eng_(mix(seed, fnv1a(stream))) {}

  std::uint64_t u64() { return eng_(); }

  /// Uniform integer in [lo, hi], inclusive. Plain modulo: the tiny bias is
  /// irrelevant here and the draw sequence stays platform-independent.
  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small exact rational: numerator in [-9, 9], denominator in [1, 9].
  Rational rational() {
    return Rational(int_in(-9, 9), int_in(1, 9));
  }

  /// Small nonzero exact rational.
  Rational nonzero_rational() {
    while (true) {
      Rational v = rational();
      if (v != 0) return v;
    }
  }

  double real(double lo, double hi) {
    // 53 mantissa bits of the raw draw; platform-independent.
    const double unit = static_cast<double>(u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

  template <class S>
  S scalar();

 private:
  static std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : text) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b | 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
};

template <>
inline Rational Rng::scalar<Rational>() {
  return rational();
}

template <>
inline double Rng::scalar<double>() {
  return real(-2.0, 2.0);
}

}  // namespace heis
