#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace spinlab {

/// 64-bit FNV-1a over the bytes of `text`.
constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream seed = mix(mix(mix(base) ^ replica) ^ fnv1a(purpose)).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replica,
                                    std::string_view purpose) noexcept {
  return mix64(mix64(mix64(base) ^ replica) ^ fnv1a(purpose));
}

/// Deterministic random stream. Variate conversions are written out here
/// rather than taken from <random> distributions, whose output is not
/// specified by the standard and differs between library vendors.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}
  RngStream(std::uint64_t base, std::uint64_t replica, std::string_view purpose)
      : RngStream(derive_seed(base, replica, purpose)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t bits() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Exponential holding time with the given rate (> 0).
  double exponential(double rate) { return -std::log(uniform()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n), n > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<__uint128_t>(engine_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace spinlab
