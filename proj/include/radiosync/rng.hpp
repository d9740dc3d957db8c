#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace radiosync {

// All randomness in the library flows through this wrapper.  mt19937_64 is
// fully specified by the standard, and we avoid std::uniform_*_distribution
// (implementation-defined), so identical seeds give identical bits on every
// platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0,1) with 53 bits of precision.
  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform-ish in [0, bound).  Modulo bias is irrelevant for instance
  // generation; determinism is what matters here.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("next_below: bound must be positive");
    return eng_() % bound;
  }

  bool bernoulli(double p) { return next_unit() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace radiosync
