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
 * The state-transforming and measuring instructions: INI, QFT, REA, ENT, DIF, PHA.
 *
 * All operations are pure: they take a state and return a new one. Randomness
 * enters only through explicit uniform draws supplied by the caller.
 */
#pragma once

#include "qisa/state.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qisa {

/// Rotation angle in radians. Angles written as exact multiples of pi keep the
/// fraction so that quarter turns produce exact factors (e^{i pi} == -1).
class PhaseAngle {
  public:
    static PhaseAngle radians(double value);
    /// pi * numerator / denominator; denominator must be positive.
    static PhaseAngle pi_times(std::int64_t numerator, std::int64_t denominator);

    [[nodiscard]] double value() const noexcept { return radians_; }
    [[nodiscard]] const std::optional<std::pair<std::int64_t, std::int64_t>> &pi_fraction() const noexcept {
        return pi_fraction_;
    }
    [[nodiscard]] PhaseAngle negated() const;

    /// e^{i phi}
    [[nodiscard]] Amplitude factor() const;

  private:
    double radians_ = 0.0;
    std::optional<std::pair<std::int64_t, std::int64_t>> pi_fraction_;
};

/// The map M of ENT: either j -> base^j mod modulus or an explicit table.
class MappingSpec {
  public:
    struct ModExp {
        std::uint64_t base;
        std::uint64_t modulus;
    };
    struct Table {
        std::map<std::uint64_t, std::uint64_t> entries;
    };

    static MappingSpec mod_exp(std::uint64_t base, std::uint64_t modulus);
    static MappingSpec table(std::map<std::uint64_t, std::uint64_t> entries);

    [[nodiscard]] const std::variant<ModExp, Table> &kind() const noexcept { return kind_; }

    /// M(j). Throws MapDomainError when a table has no entry for j.
    [[nodiscard]] std::uint64_t image(std::uint64_t j) const;

    /// Images of 0..domain-1, each checked against codomain (MapRangeError).
    [[nodiscard]] std::vector<std::uint64_t> resolve(std::uint64_t domain, std::uint64_t codomain) const;

  private:
    explicit MappingSpec(std::variant<ModExp, Table> kind) : kind_(std::move(kind)) {}

    std::variant<ModExp, Table> kind_;
};

/// Table file: "j,M(j)" lines with decimal integers, '#' comments, blank
/// lines ignored. Throws MapDomainError on malformed or duplicate entries.
[[nodiscard]] MappingSpec parse_table(std::string_view text);

[[nodiscard]] std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// b_k = (1/sqrt N) sum_j a_j exp(i 2 pi j k / N). Radix-2 FFT when N is a
/// power of two, direct summation otherwise.
[[nodiscard]] std::vector<Amplitude> qft_coefficients(std::span<const Amplitude> a);

/// e^{i 2 pi m / n}, exact at multiples of a quarter turn.
[[nodiscard]] Amplitude root_of_unity(std::uint64_t m, std::uint64_t n);

[[nodiscard]] Unitary qft_matrix(std::size_t n);
/// (2/n) * ones - identity. Requires n >= 2.
[[nodiscard]] Unitary dif_matrix(std::size_t n);
/// Identity with e^{i phi} at diagonal position `index`.
[[nodiscard]] Unitary pha_matrix(std::size_t n, PhaseAngle phi, std::size_t index);

/// Inverse-CDF sample over ascending values. Zero-probability values are never
/// returned; a draw past the accumulated total picks the last nonzero value.
[[nodiscard]] std::uint64_t sample_inverse_cdf(std::span<const double> probabilities, double draw);

/// Collapses `reg` onto `observed` and relabels that value to 0.
[[nodiscard]] JointState reset_observed(const JointState &state, std::size_t reg, std::uint64_t observed);

/// Measures `reg` with `draw` and then relabels the observed value to 0.
[[nodiscard]] JointState op_ini(const JointState &state, std::size_t reg, double draw);

[[nodiscard]] JointState op_qft(const JointState &state, std::size_t reg);

struct Readout {
    std::uint64_t value;
    JointState state;
};

[[nodiscard]] Readout op_rea(const JointState &state, std::size_t reg, double draw);

/// |j, v> -> |j, (v + M(j)) mod dim(dst)>. src and dst must differ.
[[nodiscard]] JointState op_ent(const JointState &state, std::size_t src, std::size_t dst, const MappingSpec &map);

/// Same with M given as precomputed images; images.size() must cover every
/// reachable src value (MapDomainError) and every image must be < dim(dst)
/// (MapRangeError).
[[nodiscard]] JointState op_ent(const JointState &state, std::size_t src, std::size_t dst,
                                std::span<const std::uint64_t> images);

/// Diffusion over `reg`; n must equal dim(reg).
[[nodiscard]] JointState op_dif(const JointState &state, std::size_t reg, std::uint64_t n);

[[nodiscard]] JointState op_pha(const JointState &state, std::size_t reg, PhaseAngle phi, std::uint64_t index);

} // namespace qisa
