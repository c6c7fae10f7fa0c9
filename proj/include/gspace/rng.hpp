#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace gspace {

/// xoshiro256** seeded through SplitMix64.
///
/// Every draw is defined by integer arithmetic only, so a seed produces the
/// same stream on every platform and compiler. Standard-library
/// distributions are deliberately not used: their algorithms are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p) { return uniform01() < p; }
  /// Uniform integer on [0, bound), unbiased (Lemire's multiply-and-reject).
  std::uint64_t uniform_below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Per-item stream seed: base XOR index. Rng re-mixes its seed through
/// SplitMix64, so neighboring indices give unrelated streams.
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) { return base ^ index; }

/// Seed for a named sub-task (spec number, repeat number, ...). Unlike
/// stream_seed this is a full mix, so (base, k) pairs do not alias each other.
std::uint64_t child_seed(std::uint64_t base, std::uint64_t task);

}  // namespace gspace
