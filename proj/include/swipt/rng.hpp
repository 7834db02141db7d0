#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace swipt {

// splitmix64 stream (Vigna's public-domain mixer). Used instead of the
// standard <random> distributions because the emitted stream must be
// identical across platforms and standard-library versions: Monte-Carlo runs
// promise byte-identical outputs for a given seed, and std::normal_distribution
// is implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform on [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // standard normal, Box-Muller (two draws per call)
  double gaussian() {
    const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // circularly symmetric complex gaussian with E|z|^2 = 1
  std::complex<double> complex_gaussian() {
    const double s = 0.5 * std::numbers::sqrt2;
    return {gaussian() * s, gaussian() * s};
  }

 private:
  std::uint64_t state_;
};

// Collapses (master_seed, trial, user_class, user, purpose, ...) into one
// stream key with a full-avalanche mix per component, so that every tuple
// gets a statistically unrelated stream regardless of evaluation order.
std::uint64_t derive_stream_key(std::initializer_list<std::uint64_t> parts);

}  // namespace swipt
