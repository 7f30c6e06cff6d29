#pragma once

#include <cstdint>
#include <random>

namespace sldp {

/// Seedable 64-bit Mersenne Twister with portable uniform/normal transforms.
///
/// The transforms are written out here rather than taken from <random> so
/// that a given seed produces the same stream with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(engine_()) * n;
    return static_cast<std::size_t>(wide >> 64);
  }

  /// Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Counter-based seed derivation: splitmix64 over (master, stream, index).
///
/// Sweep point k of a run with master seed s uses derive_seed(s, stream, k),
/// where stream names the consumer (chain, unitaries, ...).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

namespace streams {
inline constexpr std::uint64_t kChain = 1;
inline constexpr std::uint64_t kUnitary = 2;
inline constexpr std::uint64_t kDirect = 3;
inline constexpr std::uint64_t kSweepPoint = 4;
inline constexpr std::uint64_t kModel = 5;
}  // namespace streams

}  // namespace sldp
