#pragma once

#include <cstdint>
#include <string>

#include "multiloop/common.hpp"

namespace multiloop {

/// Counter-based generator: every draw is a pure function of (seed, counter),
/// so runs are reproducible across platforms and independent of call order
/// between streams. The mixing function is splitmix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), counter_(0) {}

  static std::string name() { return "splitmix64-counter"; }

  std::uint64_t next_u64() {
    std::uint64_t x = seed_ ^ (0x9e3779b97f4a7c15ull * (stream_ + 1));
    x += 0x9e3779b97f4a7c15ull * (++counter_);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on the complex disk of the given radius.
  Complex complex_in_disk(double radius) {
    // rejection-free: sqrt for area uniformity
    double r = radius * std::sqrt(uniform());
    double phi = 2.0 * kPi * uniform();
    return Complex(r * std::cos(phi), r * std::sin(phi));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace multiloop
