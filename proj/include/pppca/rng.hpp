#pragma once

#include <cmath>
#include <cstdint>

namespace pppca::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Steele/Lea/Flood; reference implementation by Vigna).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Independent stream key for (parent key, stream index). Used to give each
// matrix column / replicate its own stream so parallel generation is
// schedule-independent.
inline constexpr std::uint64_t substream(std::uint64_t key, std::uint64_t idx) {
  return mix64(key ^ mix64((idx + 1) * kGolden));
}

// Replicate r of a run with base seed s draws from seed s XOR hash(r).
inline constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t r) {
  return base_seed ^ mix64((r + 1) * kGolden);
}

// Counter-based SplitMix64: output i is mix64(key + (i+1)*golden), so any
// position of a stream is addressable in O(1) and streams never share state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  // Uniform on (0, 1]; never returns 0 so log() is safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired value is cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pppca::rng
