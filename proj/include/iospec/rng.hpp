#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace iospec {

// splitmix64 finalizer; used to derive independent streams from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded random source with platform-independent draws.
///
/// std::mt19937_64 output is fixed by the standard, but the std
/// distributions are not, so bounded draws and shuffles are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform over the closed interval [lo, hi]; requires lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  // Uniform index in [0, n); requires n > 0.
  std::size_t index(std::size_t n);

  // True with probability numer / denom.
  bool bernoulli(std::uint64_t numer, std::uint64_t denom);

  // Independent child stream; advances this generator by one draw.
  Rng split() { return Rng(mix_seed(next_u64(), 0x9e3779b97f4a7c15ULL)); }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[index(items.size())];
  }

  // Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t bounded(std::uint64_t span);  // uniform in [0, span]

  std::mt19937_64 engine_;
};

}  // namespace iospec
