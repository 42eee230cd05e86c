#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace netcast {

/// Counter-based 64-bit generator: output i of a stream is a keyed hash of i.
///
/// Streams are derived from a base seed plus a path of indices (layer, image,
/// row, ...), so any draw can be reproduced without replaying earlier ones.
/// Satisfies UniformRandomBitGenerator and plugs into <random> distributions.
class CounterRng {
public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key = 0, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  /// Stream keyed by `seed` and an index path, e.g. stream(seed, {image, layer, row}).
  static CounterRng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t key = mix(seed ^ 0x6a09e667f3bcc909ULL);
    for (auto p : path)
      key = mix(key ^ mix(p + 0x9e3779b97f4a7c15ULL));
    return CounterRng(key);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix(key_ + mix(counter_++)); }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  /// SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

} // namespace netcast
