#include "fuzzy_evolve/rng.hpp"

#include <limits>

namespace fuzzy_evolve {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) noexcept {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(stream_index + 0x632BE59BD9B4E019ULL));
}

std::size_t RngStream::uniform_index(std::size_t n) {
  const auto range = static_cast<std::uint64_t>(n);
  // Largest multiple of `range` that fits; values above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % range);
}

double RngStream::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

}  // namespace fuzzy_evolve
