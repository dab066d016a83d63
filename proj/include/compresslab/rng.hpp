#pragma once

#include <cstdint>

namespace compresslab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Counter-based stream: output k is mix64(key + (k+1) * gamma). Streams with
// different (seed, index) pairs get unrelated keys, so replicas can run in any
// order or in parallel and still reproduce the same numbers.
class Stream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit Stream(std::uint64_t seed, std::uint64_t index = 0) noexcept
      : key_(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() noexcept {
    key_ += kGamma;
    return mix64(key_);
  }

  // Uniform on [0, n), n > 0 (Lemire's multiply-and-reject).
  std::uint64_t bounded(std::uint64_t n) noexcept {
    __uint128_t m = static_cast<__uint128_t>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = -n % n;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
};

}  // namespace compresslab
