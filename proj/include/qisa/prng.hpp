// Copyright 2026 The qisa Authors
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

/**
 * @file
 * Counter-based 64-bit generator shared by the VM and the annealer.
 *
 * Output n of a stream with key k is splitmix64_mix(k + n * golden). Streams
 * are derived from (seed, index) pairs, so shots and restarts can be run in any
 * order or in parallel and still see the same numbers. The algorithm name is
 * written into every run report; bump the version suffix if it ever changes.
 */
#pragma once

#include <cstdint>
#include <string_view>

namespace qisa {

inline constexpr std::string_view kPrngName = "splitmix64-ctr/v1";

[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}

class CounterRng {
  public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    /// Key of stream `index` under `seed`.
    [[nodiscard]] static constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t index) noexcept {
        return mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + (index + 1) * 0xD1B54A32D192ED03ULL);
    }

    constexpr std::uint64_t next() noexcept { return mix64(key_ + (++counter_) * kGolden); }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11U) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound must be positive.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return x % bound;
    }

    [[nodiscard]] constexpr std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace qisa
