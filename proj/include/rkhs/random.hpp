#pragma once

#include <cstdint>

namespace rkhs {

/// Counter-based SplitMix64 stream.
///
/// Draw n of stream s is mix(seed + (n + 1) * golden) with the stream id folded
/// into the seed, so results depend only on (seed, stream, n) and are identical
/// on every platform. `split` derives an independent child stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : state_(mix(seed ^ mix(stream + kGolden))) {}

  std::uint64_t next() noexcept {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  SplitMix64 split(std::uint64_t stream) const noexcept { return SplitMix64(state_, stream); }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace rkhs
