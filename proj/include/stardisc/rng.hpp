#pragma once

#include <cstdint>

namespace stardisc {

// Counter-based generator built on the splitmix64 finalizer
// (Steele/Lea/Flood; mixing constants due to Vigna). Output n is a pure
// function of (key, n), so streams can be split and consumed out of order
// while staying bit-reproducible across platforms and thread counts.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ kKeyTweak)) {}

  // Independent substream; label 0 is distinct from the parent stream.
  CounterRng substream(std::uint64_t label) const {
    return CounterRng(mix(key_ + kGolden * (label + 1)), 0);
  }

  std::uint64_t next_u64() { return mix(key_ + kGolden * ++counter_); }

  // Uniform in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) via rejection-free multiply-shift is not
  // exactly uniform; use rejection to keep determinism independent of bound
  // factorization.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  CounterRng(std::uint64_t key, int) : key_(key) {}

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kKeyTweak = 0xD1B54A32D192ED03ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace stardisc
