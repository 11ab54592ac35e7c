#pragma once

// SplitMix64: 64-bit state, platform-independent output, so seeded
// sweeps reproduce byte-identical reports everywhere.

#include <complex>
#include <cstdint>

namespace coxrep {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  std::complex<double> unit_complex() {
    return std::polar(1.0, uniform(-3.14159265358979323846, 3.14159265358979323846));
  }

 private:
  std::uint64_t state_;
};

}  // namespace coxrep
