#pragma once

#include <cstdint>

namespace fidelipart {

/// splitmix64 stream shared by the partitioner and the SWAP heuristic so that
/// seeded runs are reproducible across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1): z / 2^64. Outputs within 2^10 of 2^64 round up to
  /// 1.0 in double precision and are clamped just below it.
  double uniform() noexcept {
    const double u = static_cast<double>(next()) * 0x1.0p-64;
    return u < 1.0 ? u : 0x1.fffffffffffffp-1;
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept { return next() % bound; }

private:
  std::uint64_t state_;
};

}  // namespace fidelipart
