#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace fuzzy_evolve {

// Keyed derivation of an independent 64-bit seed from (master, stream).
// SplitMix64 finalizer applied twice so neighbouring trial indices land far
// apart in the engine's seed space.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

// Per-trial random stream. The mt19937_64 output sequence is fixed by the
// standard; the two draw helpers below avoid the implementation-defined
// std:: distributions so replays match across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return RngStream(derive_stream_seed(master_seed, trial_index));
  }

  // Uniform integer in [0, n). n must be > 0. Consumes one or more engine
  // outputs (rejection keeps it unbiased; a retry is astronomically rare).
  std::size_t uniform_index(std::size_t n);

  // Uniform real in [0, 1) with 53 random bits. Consumes one engine output.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

}  // namespace fuzzy_evolve
