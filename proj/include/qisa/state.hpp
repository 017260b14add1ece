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
 * Sparse multi-register quantum state.
 *
 * A JointState maps basis points (one value per declared register) to complex
 * amplitudes; absent points have amplitude zero. Points are packed into a
 * single integer key with the first declared register in the most significant
 * bits, so ascending key order is lexicographic basis-point order.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qisa {

using Amplitude = std::complex<double>;
using BasisPoint = std::vector<std::uint64_t>;

/// Amplitudes with |a|^2 below this are dropped after every transform.
inline constexpr double kPruneThreshold = 1e-24;

/// Guards memory; both ceilings are configurable per program.
struct Limits {
    unsigned max_register_width = 24;
    unsigned max_total_width = 26;
};

struct RegisterDecl {
    std::string name;
    unsigned width = 1;

    [[nodiscard]] std::uint64_t dim() const noexcept { return std::uint64_t{1} << width; }

    friend bool operator==(const RegisterDecl &, const RegisterDecl &) = default;
};

/// Square matrix known to be unitary.
class Unitary {
  public:
    /// Validates max|U^dagger U - I| <= tolerance; throws NotUnitary otherwise.
    static Unitary from_rows(std::size_t dim, std::vector<Amplitude> row_major, double tolerance = 1e-9);

    /// For generated matrices that are unitary by construction (QFT, diffusion, phase).
    static Unitary trusted(std::size_t dim, std::vector<Amplitude> row_major);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::span<const Amplitude> data() const noexcept { return entries_; }
    [[nodiscard]] Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

    /// max over entries of |U^dagger U - I|.
    [[nodiscard]] double unitarity_error() const;

  private:
    Unitary(std::size_t dim, std::vector<Amplitude> entries) : dim_(dim), entries_(std::move(entries)) {}

    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

class JointState {
  public:
    /// The all-zero basis state. Throws EmptyRegisterList or WidthExceeded.
    static JointState zero(std::vector<RegisterDecl> registers, const Limits &limits = {});

    /// Builds a state from explicit (point, amplitude) pairs, rescaled to unit norm.
    /// Duplicate points are summed.
    static JointState from_points(std::vector<RegisterDecl> registers,
                                  const std::vector<std::pair<BasisPoint, Amplitude>> &points,
                                  const Limits &limits = {});

    /// Builds a state from the flattened vector over all registers (declaration
    /// order, first register most significant), rescaled to unit norm.
    static JointState from_dense(std::vector<RegisterDecl> registers, std::span<const Amplitude> amplitudes,
                                 const Limits &limits = {});

    [[nodiscard]] const std::vector<RegisterDecl> &registers() const noexcept { return registers_; }
    [[nodiscard]] std::size_t register_count() const noexcept { return registers_.size(); }
    [[nodiscard]] std::uint64_t dim(std::size_t reg) const;
    [[nodiscard]] std::uint64_t total_dim() const noexcept { return std::uint64_t{1} << total_width_; }

    /// Number of stored (non-pruned) basis points.
    [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }
    [[nodiscard]] std::span<const std::uint64_t> keys() const noexcept { return keys_; }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }

    [[nodiscard]] BasisPoint point(std::size_t entry) const;
    [[nodiscard]] std::uint64_t coordinate(std::size_t entry, std::size_t reg) const;
    [[nodiscard]] Amplitude amplitude_at(const BasisPoint &point) const;

    [[nodiscard]] std::uint64_t encode(const BasisPoint &point) const;
    [[nodiscard]] BasisPoint decode(std::uint64_t key) const;

    [[nodiscard]] double norm2() const;
    [[nodiscard]] std::vector<Amplitude> to_dense() const;

    /// Register-local linear map. For every group of points that differ only in
    /// coordinate `reg`, `kernel(in, out)` maps the dense amplitude vector over
    /// that coordinate. The caller guarantees the map is unitary. The result is
    /// pruned and renormalized.
    using RegisterKernel = std::function<void(std::span<const Amplitude>, std::span<Amplitude>)>;
    [[nodiscard]] JointState map_register(std::size_t reg, const RegisterKernel &kernel) const;

    /// Relabels coordinates: every key k becomes permute(k). permute must be a
    /// bijection on keys; amplitudes are moved untouched (no renormalization).
    [[nodiscard]] JointState permute_keys(const std::function<std::uint64_t(std::uint64_t)> &permute) const;

    /// Multiplies the amplitude of every point whose `reg` coordinate equals
    /// `value` by `factor`, then renormalizes.
    [[nodiscard]] JointState scale_branch(std::size_t reg, std::uint64_t value, Amplitude factor) const;

    /// Keeps only points whose `reg` coordinate equals `value`. Returns the
    /// state unchanged when nothing is removed; renormalizes otherwise.
    [[nodiscard]] JointState restrict_to(std::size_t reg, std::uint64_t value) const;

    [[nodiscard]] std::uint64_t register_mask(std::size_t reg) const;
    [[nodiscard]] unsigned register_offset(std::size_t reg) const;

  private:
    JointState(std::vector<RegisterDecl> registers, const Limits &limits);

    void check_register(std::size_t reg) const;
    void prune_and_renormalize();

    std::vector<RegisterDecl> registers_;
    std::vector<unsigned> offsets_;
    unsigned total_width_ = 0;
    std::vector<std::uint64_t> keys_; // strictly ascending
    std::vector<Amplitude> amps_;
};

/// Zero state over the given registers.
[[nodiscard]] JointState init_zero(std::vector<RegisterDecl> registers, const Limits &limits = {});

/// Probability of each value of register `reg`. Within each value the squared
/// magnitudes are summed in sorted order, so the result does not depend on
/// how the points happen to be arranged.
[[nodiscard]] std::vector<double> marginal(const JointState &state, std::size_t reg);

/// Projects register `reg` onto `value` and renormalizes. Throws
/// ZeroProbabilityBranch if no stored point has that value.
[[nodiscard]] JointState collapse(const JointState &state, std::size_t reg, std::uint64_t value);

/// Applies a dim(reg) x dim(reg) unitary to register `reg`.
[[nodiscard]] JointState apply_on_register(const JointState &state, std::size_t reg, const Unitary &transform);

/// Text dump, one line per stored point: "<v1>,<v2>,...  <re> <im>" in
/// lexicographic point order, amplitudes with 12 significant digits.
[[nodiscard]] std::vector<std::string> dump_state(const JointState &state);

} // namespace qisa
