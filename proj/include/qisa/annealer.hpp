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
 * ANN backend: classical simulated annealing of an Ising model.
 *
 * This is a classical stand-in for an adiabatic device. Only the objective
 * (the Ising energy) is modelled; the dynamics are single-flip Metropolis
 * moves on a geometric temperature ladder.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qisa::anneal {

using Spin = std::int8_t;
using SpinConfig = std::vector<Spin>;

struct Coupling {
    std::size_t i;
    std::size_t j;
    double value;

    friend bool operator==(const Coupling &, const Coupling &) = default;
};

/// Fields h on vertices and couplings J on edges (i < j, no duplicates).
class IsingModel {
  public:
    /// Throws InvalidModel on empty models, bad indices, duplicate edges or
    /// non-finite values. Couplings are stored sorted by (i, j).
    IsingModel(std::vector<double> fields, std::vector<Coupling> couplings);

    [[nodiscard]] std::size_t size() const noexcept { return fields_.size(); }
    [[nodiscard]] const std::vector<double> &fields() const noexcept { return fields_; }
    [[nodiscard]] const std::vector<Coupling> &couplings() const noexcept { return couplings_; }
    [[nodiscard]] const std::vector<std::pair<std::size_t, double>> &neighbors(std::size_t v) const {
        return adjacency_.at(v);
    }

  private:
    std::vector<double> fields_;
    std::vector<Coupling> couplings_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

struct AnnealSchedule {
    double initial_temperature = 2.0;
    double final_temperature = 0.01;
    std::size_t sweeps = 0; ///< 0 selects 200 * n
    std::size_t restarts = 8;

    /// Throws ContractError unless 0 < final < initial and restarts >= 1.
    void validate() const;
    [[nodiscard]] std::size_t sweeps_for(std::size_t n) const noexcept { return sweeps != 0 ? sweeps : 200 * n; }
};

struct GroundState {
    SpinConfig spins;
    double energy;
};

/// sum_i h_i s_i + sum_(i,j) J_ij s_i s_j. Throws DimensionMismatch on a
/// length mismatch and ContractError on spins other than +-1.
[[nodiscard]] double energy(const IsingModel &model, std::span<const Spin> spins);

/// energy(after flipping spin v) - energy(before).
[[nodiscard]] double flip_delta(const IsingModel &model, std::span<const Spin> spins, std::size_t v);

/// Exhaustive minimum; ties go to the lexicographically smallest
/// configuration with -1 ordered before +1. Throws TooLarge for n > 20.
[[nodiscard]] GroundState brute_force_ground(const IsingModel &model);

/// Best configuration over all restarts; restart r uses stream (seed, r).
/// Deterministic in (model, schedule, seed). Equal energies keep the earlier restart.
[[nodiscard]] GroundState anneal(const IsingModel &model, const AnnealSchedule &schedule, std::uint64_t seed);

/// Text format: "h <i> <value>" and "J <i> <j> <value>" lines, '#' comments.
[[nodiscard]] IsingModel parse_ising(std::string_view text);
[[nodiscard]] IsingModel load_ising(const std::filesystem::path &path);

} // namespace qisa::anneal
