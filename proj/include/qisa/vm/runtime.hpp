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
 * Shot-by-shot execution of elaborated programs.
 *
 * Every shot starts from the zero state and draws all randomness (REA and INI
 * samples, ANN seeds) from one counter-based stream keyed by the shot seed.
 * Shot i of a run uses CounterRng::derive(run seed, i), so shots may execute
 * in any order or concurrently without changing the report.
 */
#pragma once

#include "qisa/annealer.hpp"
#include "qisa/error.hpp"
#include "qisa/lang/elaborator.hpp"
#include "qisa/state.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qisa::vm {

struct Measurement {
    std::size_t instruction;
    std::string reg;
    std::uint64_t value;

    friend bool operator==(const Measurement &, const Measurement &) = default;
};

struct AnnealOutcome {
    std::size_t instruction;
    std::string model;
    anneal::SpinConfig spins;
    double energy;

    friend bool operator==(const AnnealOutcome &, const AnnealOutcome &) = default;
};

using ShotEvent = std::variant<Measurement, AnnealOutcome>;

/// One entry per executed REA or ANN, in execution order.
struct ShotRecord {
    std::vector<ShotEvent> events;

    friend bool operator==(const ShotRecord &, const ShotRecord &) = default;
};

struct ShotResult {
    ShotRecord record;
    std::optional<JointState> final_state; ///< empty for register-free programs
};

/// An instruction failed at run time; wraps the underlying error.
class InstructionError : public Error {
  public:
    InstructionError(const Error &cause, std::size_t instruction, SourcePos pos)
        : Error(cause.code(), "instruction " + std::to_string(instruction) + " (" + to_string(pos) +
                                  "): " + std::string(cause.what()).substr(to_string(cause.code()).size() + 2)),
          instruction_(instruction), pos_(pos) {}

    [[nodiscard]] std::size_t instruction() const noexcept { return instruction_; }
    [[nodiscard]] SourcePos pos() const noexcept { return pos_; }

  private:
    std::size_t instruction_;
    SourcePos pos_;
};

/// Runs the program once with the stream keyed by `seed`.
[[nodiscard]] ShotResult execute(const lang::ElaboratedProgram &program, std::uint64_t seed,
                                 const anneal::AnnealSchedule &schedule = {});

[[nodiscard]] ShotRecord run_once(const lang::ElaboratedProgram &program, std::uint64_t seed,
                                  const anneal::AnnealSchedule &schedule = {});

struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t shots = 1;
    bool trace = false;      ///< keep every shot record
    bool dump_state = false; ///< single-shot runs only
    anneal::AnnealSchedule schedule;
    unsigned threads = 0; ///< 0 picks the hardware concurrency
};

struct Histogram {
    std::string reg;
    std::map<std::uint64_t, std::uint64_t> counts;
};

struct RunReport {
    std::string prng;
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    /// Registers that are read, in declaration order; each counts the value of
    /// the register's last REA in every shot, so totals equal `shots`.
    std::vector<Histogram> histograms;
    std::optional<std::vector<ShotRecord>> records;
    std::optional<std::vector<std::string>> state_dump;
};

/// Records are kept when tracing or when the program contains ANN (its
/// results only appear there). The state dump is produced for single-shot
/// runs with dump_state or trace set. Throws ContractError for shots == 0.
[[nodiscard]] RunReport run_shots(const lang::ElaboratedProgram &program, const RunConfig &config);

/// JSON text with fields prng, seed, shots, histograms, then the optional
/// records and state_dump. Field order is fixed.
[[nodiscard]] std::string serialize(const RunReport &report);

/// Exact probability distribution of every REA instruction, obtained by
/// branching over all measurement outcomes instead of sampling. Keys are
/// instruction indices. Throws TooLarge past `max_branches` leaves.
[[nodiscard]] std::map<std::size_t, std::vector<double>>
exact_readout_distributions(const lang::ElaboratedProgram &program, std::size_t max_branches = 1 << 16);

/// Exact distribution of the value that run_shots histograms for `reg` (the
/// register's last REA). Throws ContractError if `reg` is never read.
[[nodiscard]] std::vector<double> exact_histogram_distribution(const lang::ElaboratedProgram &program,
                                                               std::size_t reg);

} // namespace qisa::vm
