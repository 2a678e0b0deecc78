// Copyright (c) 2026 The logmppi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace logmppi {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer: bijective avalanche mix of a 64-bit word.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Folds two words into one well-mixed word. Used to derive independent
/// sub-seeds (per trial, per rollout, per tick) from a master seed.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed,
                                        std::uint64_t key) noexcept {
  return mix64(seed + kGoldenGamma * (key + 1));
}

/**
 * Position-addressable random stream.
 *
 * A stream is identified by (seed, stream id), and every output is a pure
 * function of that identity and a position index. Values can therefore be
 * produced in any order, from any thread, in batches of any width, and the
 * result never depends on scheduling. Giving each rollout its own stream id
 * makes whole-batch sampling reproducible under any worker partitioning.
 */
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : base_(mix64(mix_seed(seed, stream) ^ 0xA3EC647659359ACDull)) {}

  /// 64 random bits at the given position.
  std::uint64_t bits(std::uint64_t position) const noexcept {
    return mix64(base_ + (position + 1) * kGoldenGamma);
  }

  /// Uniform double in [0, 1) at the given position (53-bit resolution).
  double uniform(std::uint64_t position) const noexcept {
    return static_cast<double>(bits(position) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t base_;
};

/// Stateful walker over a CounterRng for consumers that just need a plain
/// sequential generator (world synthesis, test fixtures).
class SequentialRng {
 public:
  explicit SequentialRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : stream_(seed, stream) {}

  std::uint64_t next_bits() noexcept { return stream_.bits(pos_++); }

  double next_uniform() noexcept { return stream_.uniform(pos_++); }

  /// Uniform double in [lo, hi).
  double uniform_in(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_uniform();
  }

  /// Uniform integer in [0, n).
  int below(int n) noexcept {
    return static_cast<int>(next_uniform() * static_cast<double>(n));
  }

 private:
  CounterRng stream_;
  std::uint64_t pos_ = 0;
};

}  // namespace logmppi
