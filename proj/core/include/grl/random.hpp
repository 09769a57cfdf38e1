#pragma once

#include <cstdint>
#include <vector>

#include "grl/group.hpp"

namespace grl {

/// SplitMix64 (Steele, Lea and Flood): a 64-bit state advanced by the golden
/// gamma 0x9E3779B97F4A7C15 and finalized by two xor-shift-multiply rounds.
/// Chosen because its output is fully specified and trivial to reproduce in
/// any language, so seeded instances are identical everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = 0;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

/// Each element 0..N-1 is included, in order, when next_double() < density.
inline ElementSet random_element_set(SplitMix64& rng, std::size_t group_order, double density) {
  std::vector<Element> members;
  for (std::size_t x = 0; x < group_order; ++x) {
    if (rng.next_double() < density) members.push_back(static_cast<Element>(x));
  }
  return ElementSet(std::move(members), group_order);
}

}  // namespace grl
