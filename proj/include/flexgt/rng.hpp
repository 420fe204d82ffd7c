#pragma once

#include <cmath>
#include <cstdint>

namespace flexgt {

/// Counter-based pseudo-random streams. Every draw is a pure function of
/// (seed, stream, key_a, key_b, counter), so runs replay bit-identically no
/// matter how nodes or rounds are scheduled.
enum class RngStream : std::uint64_t {
  problem_features = 1,
  problem_targets = 2,
  state_init = 3,
  gradient_noise = 4,
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_key(std::uint64_t seed, RngStream stream,
                                std::uint64_t key_a, std::uint64_t key_b) {
  std::uint64_t h = mix64(seed + static_cast<std::uint64_t>(stream));
  h = mix64(h + kGolden * (key_a + 1));
  h = mix64(h + kGolden * (key_b + 1));
  return h;
}

}  // namespace detail

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, RngStream stream, std::uint64_t key_a = 0,
             std::uint64_t key_b = 0)
      : key_(detail::derive_key(seed, stream, key_a, key_b)) {}

  std::uint64_t next_u64() {
    return detail::mix64(key_ + detail::kGolden * ++counter_);
  }

  /// Uniform draw on [0, 1) with 53 bits of mantissa.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; pairs are cached so consecutive calls
  /// consume one uniform pair per two gaussians.
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace flexgt
