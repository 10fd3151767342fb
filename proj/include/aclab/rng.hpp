#pragma once

#include <cstdint>

#include "aclab/rational.hpp"

namespace aclab {

/// splitmix64 stream; fixed algorithm so seeded runs reproduce across
/// platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Dyadic rational in [0, 1) with `bits` random bits.
  Rat next_dyadic(int bits = 32) {
    std::uint64_t mask = bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
    return Rat(static_cast<long long>(next_u64() & mask)) / Rat::pow2(bits);
  }

  /// Rational in [0, 1) with denominator den_scale * 2^bits; useful when a
  /// non-dyadic denominator should be all but guaranteed.
  Rat next_rational(long den_scale, int bits = 30) {
    Rat den = Rat(den_scale) * Rat::pow2(bits);
    Rat num =
        Rat(static_cast<long long>(next_u64() % (static_cast<std::uint64_t>(den_scale) << bits)));
    return num / den;
  }

 private:
  std::uint64_t state_;
};

}  // namespace aclab
