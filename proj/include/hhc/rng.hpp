#pragma once

#include <cstdint>

namespace hhc {

// Counter-based generator: draw i depends only on (seed, i), so results do
// not depend on evaluation order. Mixing is the splitmix64 finaliser.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t index) const noexcept {
    std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform(std::uint64_t index) const noexcept {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  // Uniform in the open interval (0, 1).
  double uniform_open(std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(std::uint64_t index, double lo, double hi) const noexcept {
    return lo + (hi - lo) * uniform(index);
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace hhc
