#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace maxconn {

/// SplitMix64: the state is a counter advanced by a fixed odd gamma and each
/// output is a bijective mix of the counter. Streams are split by hashing
/// the parent seed with a stream index, so restarts and workers draw from
/// reproducible, independent sequences.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }

  result_type operator()() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Independent generator for stream `index`, derived from the current state.
  SplitMix64 split(std::uint64_t index) const { return SplitMix64(mix(mix(state_) ^ mix(index + kGamma))); }

  /// Uniform integer in [0, bound) by multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t state_;
};

}  // namespace maxconn
