#pragma once

#include <cstdint>

#include "syndef/core.hpp"

namespace syndef {

// splitmix64 over (seed, counter): draw k of a stream is a pure function of both.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed ^ (stream * 0xD1B54A32D192ED03ULL)) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return mix(seed_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("empty range");
    const std::uint64_t limit = ~0ULL - (~0ULL % bound);
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return v % bound;
  }

  int uniform(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

  Word word(int n) {
    Word w(n);
    for (auto& s : w) s = static_cast<Symbol>(below(4) + 1);
    return w;
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace syndef
