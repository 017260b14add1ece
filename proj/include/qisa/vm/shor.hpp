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
 * Classical post-processing for order finding: recover r from a measured
 * Fourier peak k and turn r into a factor of N.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qisa::vm {

/// Convergents p/q of num/den, in order.
[[nodiscard]] std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents(std::uint64_t num, std::uint64_t den);

/// Smallest r with x^r = 1 (mod N) among the convergent denominators of
/// k / 2^n that are <= N and round(2^n / k). std::nullopt when none verifies;
/// k = 0 carries no information and always yields nullopt.
/// Throws ContractError unless 0 <= k < 2^n.
[[nodiscard]] std::optional<std::uint64_t> infer_order(std::uint64_t k, unsigned n, std::uint64_t modulus,
                                                       std::uint64_t base);

struct FactorResult {
    enum class Kind { Factor, OddOrder, TrivialFactor };
    Kind kind;
    std::uint64_t factor = 0; ///< set when kind == Factor

    friend bool operator==(const FactorResult &, const FactorResult &) = default;
};

/// gcd(x^(r/2) - 1, N), falling back to gcd(x^(r/2) + 1, N). Throws
/// ContractError unless x^r = 1 (mod N).
[[nodiscard]] FactorResult extract_factor(std::uint64_t modulus, std::uint64_t base, std::uint64_t order);

} // namespace qisa::vm
