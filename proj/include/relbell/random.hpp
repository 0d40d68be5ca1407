// Copyright 2026 The relbell Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>

namespace relbell {

/**
 * Counter-based pseudo-random stream: the value at position `counter` is a
 * pure function of (key, counter), so any block of draws can be produced
 * independently of the others. The mixer is the SplitMix64 finalizer.
 */
class CounterRng {
  public:
    constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    /// Derive a key from a seed and up to two stream indices.
    static constexpr std::uint64_t derive_key(std::uint64_t seed,
                                              std::uint64_t stream,
                                              std::uint64_t block = 0) noexcept {
        std::uint64_t k = mix(seed ^ 0x6a09e667f3bcc909ULL);
        k = mix(k ^ (stream + 0x9e3779b97f4a7c15ULL));
        return mix(k ^ (block + 0xbb67ae8584caa73bULL));
    }

    [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
        return mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    [[nodiscard]] constexpr double uniform(std::uint64_t counter) const noexcept {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t key_;
};

} // namespace relbell
