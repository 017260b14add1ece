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

#include "qisa/vm/runtime.hpp"

#include "qisa/isa.hpp"
#include "qisa/prng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <thread>

namespace qisa::vm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::optional<JointState> fresh_state(const lang::ElaboratedProgram &program) {
    if (program.registers.empty()) {
        return std::nullopt;
    }
    return init_zero(program.registers, program.limits);
}

JointState &require(std::optional<JointState> &state) {
    if (!state) {
        throw Error(ErrorCode::ContractError, "program declares no registers");
    }
    return *state;
}

/// Index of the last REA per register, or npos.
std::vector<std::size_t> last_reads(const lang::ElaboratedProgram &program) {
    std::vector<std::size_t> last(program.registers.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < program.instructions.size(); ++i) {
        if (const auto *rea = std::get_if<lang::ReaOp>(&program.instructions[i].op)) {
            last[rea->reg] = i;
        }
    }
    return last;
}

bool has_anneal(const lang::ElaboratedProgram &program) {
    return std::any_of(program.instructions.begin(), program.instructions.end(),
                       [](const lang::Instruction &ins) { return std::holds_alternative<lang::AnnOp>(ins.op); });
}

} // namespace

ShotResult execute(const lang::ElaboratedProgram &program, std::uint64_t seed,
                   const anneal::AnnealSchedule &schedule) {
    CounterRng rng(seed);
    ShotResult result;
    std::optional<JointState> state = fresh_state(program);
    for (std::size_t i = 0; i < program.instructions.size(); ++i) {
        const lang::Instruction &ins = program.instructions[i];
        try {
            std::visit(Overloaded{
                           [&](const lang::IniOp &op) { state = op_ini(require(state), op.reg, rng.uniform()); },
                           [&](const lang::QftOp &op) { state = op_qft(require(state), op.reg); },
                           [&](const lang::ReaOp &op) {
                               Readout r = op_rea(require(state), op.reg, rng.uniform());
                               result.record.events.emplace_back(
                                   Measurement{i, program.registers[op.reg].name, r.value});
                               state = std::move(r.state);
                           },
                           [&](const lang::EntOp &op) { state = op_ent(require(state), op.src, op.dst, *op.images); },
                           [&](const lang::DifOp &op) { state = op_dif(require(state), op.reg, op.size); },
                           [&](const lang::PhaOp &op) { state = op_pha(require(state), op.reg, op.phase, op.index); },
                           [&](const lang::AnnOp &op) {
                               anneal::GroundState g = anneal::anneal(*op.model, schedule, rng.next());
                               result.record.events.emplace_back(
                                   AnnealOutcome{i, op.path, std::move(g.spins), g.energy});
                           },
                       },
                       ins.op);
        } catch (const InstructionError &) {
            throw;
        } catch (const Error &err) {
            throw InstructionError(err, i, ins.pos);
        }
    }
    result.final_state = std::move(state);
    return result;
}

ShotRecord run_once(const lang::ElaboratedProgram &program, std::uint64_t seed,
                    const anneal::AnnealSchedule &schedule) {
    return execute(program, seed, schedule).record;
}

RunReport run_shots(const lang::ElaboratedProgram &program, const RunConfig &config) {
    if (config.shots == 0) {
        throw Error(ErrorCode::ContractError, "shots must be at least 1");
    }
    config.schedule.validate();
    const bool keep_state = config.shots == 1 && (config.dump_state || config.trace);
    const bool keep_records = config.trace || has_anneal(program);

    std::vector<ShotRecord> records(config.shots);
    std::optional<JointState> final_state;

    unsigned threads = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.shots));
    if (threads <= 1) {
        for (std::size_t s = 0; s < config.shots; ++s) {
            ShotResult r = execute(program, CounterRng::derive(config.seed, s), config.schedule);
            records[s] = std::move(r.record);
            if (keep_state) {
                final_state = std::move(r.final_state);
            }
        }
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&, t] {
                    try {
                        for (std::size_t s = t; s < config.shots; s += threads) {
                            ShotResult r = execute(program, CounterRng::derive(config.seed, s), config.schedule);
                            records[s] = std::move(r.record);
                            if (keep_state) {
                                final_state = std::move(r.final_state);
                            }
                        }
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (const std::exception_ptr &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    RunReport report;
    report.prng = std::string(kPrngName);
    report.seed = config.seed;
    report.shots = config.shots;
    const std::vector<std::size_t> last = last_reads(program);
    std::vector<std::size_t> slot(program.registers.size(), static_cast<std::size_t>(-1));
    for (std::size_t r = 0; r < program.registers.size(); ++r) {
        if (last[r] != static_cast<std::size_t>(-1)) {
            slot[r] = report.histograms.size();
            report.histograms.push_back({program.registers[r].name, {}});
        }
    }
    for (const ShotRecord &rec : records) {
        for (const ShotEvent &ev : rec.events) {
            if (const auto *m = std::get_if<Measurement>(&ev)) {
                const auto &ins = program.instructions[m->instruction];
                const std::size_t reg = std::get<lang::ReaOp>(ins.op).reg;
                if (last[reg] == m->instruction) {
                    ++report.histograms[slot[reg]].counts[m->value];
                }
            }
        }
    }
    if (keep_records) {
        report.records = std::move(records);
    }
    if (keep_state && final_state) {
        report.state_dump = dump_state(*final_state);
    }
    return report;
}

std::string serialize(const RunReport &report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["prng"] = report.prng;
    doc["seed"] = report.seed;
    doc["shots"] = report.shots;
    ordered_json hist = ordered_json::object();
    for (const Histogram &h : report.histograms) {
        ordered_json counts = ordered_json::object();
        for (const auto &[value, count] : h.counts) {
            counts[std::to_string(value)] = count;
        }
        hist[h.reg] = std::move(counts);
    }
    doc["histograms"] = std::move(hist);
    if (report.records) {
        ordered_json recs = ordered_json::array();
        for (std::size_t s = 0; s < report.records->size(); ++s) {
            ordered_json events = ordered_json::array();
            for (const ShotEvent &ev : (*report.records)[s].events) {
                std::visit(Overloaded{
                               [&](const Measurement &m) {
                                   events.push_back(ordered_json{
                                       {"instruction", m.instruction}, {"register", m.reg}, {"value", m.value}});
                               },
                               [&](const AnnealOutcome &a) {
                                   ordered_json spins = ordered_json::array();
                                   for (anneal::Spin sp : a.spins) {
                                       spins.push_back(static_cast<int>(sp));
                                   }
                                   events.push_back(ordered_json{{"instruction", a.instruction},
                                                                 {"anneal", a.model},
                                                                 {"energy", a.energy},
                                                                 {"spins", std::move(spins)}});
                               },
                           },
                           ev);
            }
            recs.push_back(ordered_json{{"shot", s}, {"events", std::move(events)}});
        }
        doc["records"] = std::move(recs);
    }
    if (report.state_dump) {
        doc["state_dump"] = *report.state_dump;
    }
    return doc.dump(2) + "\n";
}

namespace {

class ExactWalker {
  public:
    ExactWalker(const lang::ElaboratedProgram &program, std::size_t max_branches)
        : program_(program), max_branches_(max_branches) {
        measuring_after_.assign(program.instructions.size() + 1, false);
        for (std::size_t i = program.instructions.size(); i-- > 0;) {
            const auto &op = program.instructions[i].op;
            const bool measures = std::holds_alternative<lang::ReaOp>(op) || std::holds_alternative<lang::IniOp>(op);
            measuring_after_[i] = measuring_after_[i + 1] || measures;
        }
    }

    std::map<std::size_t, std::vector<double>> run() {
        if (!program_.registers.empty()) {
            walk(init_zero(program_.registers, program_.limits), 1.0, 0);
        }
        return std::move(dists_);
    }

  private:
    void walk(JointState state, double weight, std::size_t pc) {
        for (; pc < program_.instructions.size(); ++pc) {
            const lang::Instruction &ins = program_.instructions[pc];
            try {
                if (const auto *ini = std::get_if<lang::IniOp>(&ins.op)) {
                    branch(state, weight, pc, ini->reg, true);
                    return;
                }
                if (const auto *rea = std::get_if<lang::ReaOp>(&ins.op)) {
                    const std::vector<double> m = marginal(state, rea->reg);
                    auto &dist = dists_[pc];
                    dist.resize(m.size(), 0.0);
                    for (std::size_t v = 0; v < m.size(); ++v) {
                        dist[v] += weight * m[v];
                    }
                    if (!measuring_after_[pc + 1]) {
                        count_leaf();
                        return;
                    }
                    branch(state, weight, pc, rea->reg, false);
                    return;
                }
                std::visit(Overloaded{
                               [&](const lang::QftOp &op) { state = op_qft(state, op.reg); },
                               [&](const lang::EntOp &op) { state = op_ent(state, op.src, op.dst, *op.images); },
                               [&](const lang::DifOp &op) { state = op_dif(state, op.reg, op.size); },
                               [&](const lang::PhaOp &op) { state = op_pha(state, op.reg, op.phase, op.index); },
                               [](const auto &) {},
                           },
                           ins.op);
            } catch (const InstructionError &) {
                throw;
            } catch (const Error &err) {
                throw InstructionError(err, pc, ins.pos);
            }
        }
        count_leaf();
    }

    void branch(const JointState &state, double weight, std::size_t pc, std::size_t reg, bool reset) {
        const std::vector<double> m = marginal(state, reg);
        for (std::uint64_t v = 0; v < m.size(); ++v) {
            if (m[v] > 0.0) {
                JointState next = reset ? reset_observed(state, reg, v) : collapse(state, reg, v);
                walk(std::move(next), weight * m[v], pc + 1);
            }
        }
    }

    void count_leaf() {
        if (++leaves_ > max_branches_) {
            throw Error(ErrorCode::TooLarge,
                        "exact enumeration exceeds " + std::to_string(max_branches_) + " measurement branches");
        }
    }

    const lang::ElaboratedProgram &program_;
    std::size_t max_branches_;
    std::size_t leaves_ = 0;
    std::vector<bool> measuring_after_;
    std::map<std::size_t, std::vector<double>> dists_;
};

} // namespace

std::map<std::size_t, std::vector<double>> exact_readout_distributions(const lang::ElaboratedProgram &program,
                                                                       std::size_t max_branches) {
    return ExactWalker(program, max_branches).run();
}

std::vector<double> exact_histogram_distribution(const lang::ElaboratedProgram &program, std::size_t reg) {
    const std::vector<std::size_t> last = last_reads(program);
    if (reg >= last.size() || last[reg] == static_cast<std::size_t>(-1)) {
        throw Error(ErrorCode::ContractError, "register is never read");
    }
    auto dists = exact_readout_distributions(program);
    return dists.at(last[reg]);
}

} // namespace qisa::vm
