#include "iospec/rng.hpp"

#include <limits>

namespace iospec {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(mix_seed(seed, 0)) {}

std::uint64_t Rng::bounded(std::uint64_t span) {
  if (span == std::numeric_limits<std::uint64_t>::max()) return engine_();
  const std::uint64_t range = span + 1;
  // 2^64 mod range; draws below it would bias the low residues.
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return x % range;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + bounded(span));
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(bounded(static_cast<std::uint64_t>(n) - 1));
}

bool Rng::bernoulli(std::uint64_t numer, std::uint64_t denom) {
  if (numer >= denom) return true;
  return bounded(denom - 1) < numer;
}

}  // namespace iospec
