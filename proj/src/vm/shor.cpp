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

#include "qisa/vm/shor.hpp"

#include "qisa/error.hpp"
#include "qisa/isa.hpp"

#include <algorithm>
#include <numeric>

namespace qisa::vm {

std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents(std::uint64_t num, std::uint64_t den) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    if (den == 0) {
        return out;
    }
    // h/k recurrences seeded with h_{-1}/k_{-1} = 1/0 and h_{-2}/k_{-2} = 0/1
    std::uint64_t h_prev = 1;
    std::uint64_t h_prev2 = 0;
    std::uint64_t k_prev = 0;
    std::uint64_t k_prev2 = 1;
    while (den != 0) {
        const std::uint64_t a = num / den;
        const std::uint64_t h = a * h_prev + h_prev2;
        const std::uint64_t k = a * k_prev + k_prev2;
        out.emplace_back(h, k);
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const std::uint64_t rem = num % den;
        num = den;
        den = rem;
    }
    return out;
}

std::optional<std::uint64_t> infer_order(std::uint64_t k, unsigned n, std::uint64_t modulus, std::uint64_t base) {
    if (n >= 63 || k >= (std::uint64_t{1} << n)) {
        throw Error(ErrorCode::ContractError, "measured value must satisfy 0 <= k < 2^n");
    }
    if (modulus < 2) {
        throw Error(ErrorCode::ContractError, "modulus must be at least 2");
    }
    if (k == 0) {
        return std::nullopt;
    }
    const std::uint64_t q = std::uint64_t{1} << n;
    std::vector<std::uint64_t> candidates;
    for (const auto &[p, den] : convergents(k, q)) {
        if (den >= 1 && den <= modulus) {
            candidates.push_back(den);
        }
    }
    candidates.push_back((2 * q + k) / (2 * k)); // round(q / k)
    std::sort(candidates.begin(), candidates.end());
    for (std::uint64_t r : candidates) {
        if (r >= 1 && mod_pow(base, r, modulus) == 1) {
            return r;
        }
    }
    return std::nullopt;
}

FactorResult extract_factor(std::uint64_t modulus, std::uint64_t base, std::uint64_t order) {
    if (modulus < 2 || order == 0 || mod_pow(base, order, modulus) != 1) {
        throw Error(ErrorCode::ContractError, "extract_factor needs x^r = 1 (mod N)");
    }
    if (order % 2 != 0) {
        return {FactorResult::Kind::OddOrder};
    }
    const std::uint64_t half = mod_pow(base, order / 2, modulus);
    const std::uint64_t minus = std::gcd((half + modulus - 1) % modulus, modulus);
    if (minus != 1 && minus != modulus) {
        return {FactorResult::Kind::Factor, minus};
    }
    const std::uint64_t plus = std::gcd((half + 1) % modulus, modulus);
    if (plus != 1 && plus != modulus) {
        return {FactorResult::Kind::Factor, plus};
    }
    return {FactorResult::Kind::TrivialFactor};
}

} // namespace qisa::vm
