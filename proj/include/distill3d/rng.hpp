// Copyright Contributors to the distill3d Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace distill3d {

/// Deterministic random stream. All randomness in the pipeline flows from one
/// global seed through named substreams so individual stages are rerunnable.
///
/// Gaussian draws use an explicit Box-Muller transform instead of
/// std::normal_distribution; the standard does not pin that distribution's
/// algorithm, and checkpoints must be byte-reproducible.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one value per pair; cache the other).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform integer in [0, n).
  uint64_t uniform_int(uint64_t n) {
    // Rejection sampling keeps the result unbiased.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = 0;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  /// Fair coin: +1 or -1.
  int sign() { return (engine_() & 1u) ? 1 : -1; }

  uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

constexpr uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Derive a named substream from a global seed. Stage names ("pretrain",
/// "stage1", ...) map to independent streams.
inline RngStream substream(uint64_t seed, std::string_view name) {
  return RngStream(detail::splitmix64(seed ^ detail::fnv1a64(name)));
}

/// Stateless per-element hash used for ray-sample jitter: deterministic for a
/// given (seed, index) regardless of evaluation order.
inline double hash_uniform(uint64_t seed, uint64_t index) {
  const uint64_t h = detail::splitmix64(seed ^ detail::splitmix64(index));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace distill3d
