#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "ginlab/common.hpp"

namespace ginlab {

/// SplitMix64; expands (seed, stream) pairs into generator state.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/// xoshiro256++ with state derived purely from (seed, stream). Streams
/// indexed by sample are independent of thread scheduling, which is what
/// makes parallel sampling reproducible. Gaussian variates come from our
/// own Box-Muller so output does not depend on the standard library.
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm{seed ^ (0x9e3779b97f4a7c15ULL *
                          (stream + 0x632be59bd9b4e019ULL))};
    for (auto& w : s_) w = sm.next();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// uniform in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// standard normal
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(kTwoPi * u2);
    have_cached_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  double normal(double stddev) { return stddev * normal(); }

  /// complex Gaussian with <|z|^2> = var and <z^2> = 0
  cplx cnormal(double var = 1.0) {
    double s = std::sqrt(0.5 * var);
    return {s * normal(), s * normal()};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace ginlab
