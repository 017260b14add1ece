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

#include "qisa/annealer.hpp"

#include "qisa/error.hpp"
#include "qisa/prng.hpp"
#include "qisa/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

namespace qisa::anneal {

IsingModel::IsingModel(std::vector<double> fields, std::vector<Coupling> couplings)
    : fields_(std::move(fields)), couplings_(std::move(couplings)) {
    const std::size_t n = fields_.size();
    if (n == 0) {
        throw Error(ErrorCode::InvalidModel, "model has no vertices");
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!std::isfinite(fields_[v])) {
            throw Error(ErrorCode::InvalidModel, "h[" + std::to_string(v) + "] is not finite");
        }
    }
    std::sort(couplings_.begin(), couplings_.end(),
              [](const Coupling &a, const Coupling &b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    adjacency_.resize(n);
    for (std::size_t e = 0; e < couplings_.size(); ++e) {
        const Coupling &c = couplings_[e];
        if (!(c.i < c.j) || c.j >= n) {
            throw Error(ErrorCode::InvalidModel,
                        "edge (" + std::to_string(c.i) + ", " + std::to_string(c.j) + ") violates 0 <= i < j < n");
        }
        if (!std::isfinite(c.value)) {
            throw Error(ErrorCode::InvalidModel, "J on edge (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                                                     ") is not finite");
        }
        if (e > 0 && couplings_[e - 1].i == c.i && couplings_[e - 1].j == c.j) {
            throw Error(ErrorCode::InvalidModel,
                        "duplicate edge (" + std::to_string(c.i) + ", " + std::to_string(c.j) + ")");
        }
        adjacency_[c.i].emplace_back(c.j, c.value);
        adjacency_[c.j].emplace_back(c.i, c.value);
    }
}

void AnnealSchedule::validate() const {
    if (!(initial_temperature > 0.0) || !(final_temperature > 0.0) || !(final_temperature < initial_temperature) ||
        !std::isfinite(initial_temperature)) {
        throw Error(ErrorCode::ContractError, "schedule needs 0 < final temperature < initial temperature");
    }
    if (restarts == 0) {
        throw Error(ErrorCode::ContractError, "schedule needs at least one restart");
    }
}

double energy(const IsingModel &model, std::span<const Spin> spins) {
    if (spins.size() != model.size()) {
        throw Error(ErrorCode::DimensionMismatch, "configuration has " + std::to_string(spins.size()) +
                                                      " spins, model has " + std::to_string(model.size()));
    }
    double e = 0.0;
    for (std::size_t v = 0; v < spins.size(); ++v) {
        if (spins[v] != 1 && spins[v] != -1) {
            throw Error(ErrorCode::ContractError, "spin values must be +1 or -1");
        }
        e += model.fields()[v] * spins[v];
    }
    for (const Coupling &c : model.couplings()) {
        e += c.value * spins[c.i] * spins[c.j];
    }
    return e;
}

double flip_delta(const IsingModel &model, std::span<const Spin> spins, std::size_t v) {
    double local = model.fields()[v];
    for (const auto &[u, value] : model.neighbors(v)) {
        local += value * spins[u];
    }
    return -2.0 * spins[v] * local;
}

GroundState brute_force_ground(const IsingModel &model) {
    const std::size_t n = model.size();
    if (n > 20) {
        throw Error(ErrorCode::TooLarge, "exhaustive search is limited to 20 spins, model has " + std::to_string(n));
    }
    // Index bit (n-1-v) set means spin v is +1, so ascending indices walk
    // configurations in lexicographic order with -1 before +1.
    SpinConfig spins(n);
    GroundState best{SpinConfig(n, -1), std::numeric_limits<double>::infinity()};
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t index = 0; index < count; ++index) {
        for (std::size_t v = 0; v < n; ++v) {
            spins[v] = ((index >> (n - 1 - v)) & 1U) != 0 ? Spin{1} : Spin{-1};
        }
        const double e = energy(model, spins);
        if (e < best.energy) {
            best = {spins, e};
        }
    }
    return best;
}

namespace {

GroundState anneal_once(const IsingModel &model, const AnnealSchedule &schedule, std::uint64_t key) {
    const std::size_t n = model.size();
    CounterRng rng(key);
    SpinConfig spins(n);
    for (Spin &s : spins) {
        s = (rng.next() >> 63U) != 0 ? Spin{1} : Spin{-1};
    }
    double current = energy(model, spins);
    GroundState best{spins, current};

    const std::size_t sweeps = schedule.sweeps_for(n);
    const double ratio = schedule.final_temperature / schedule.initial_temperature;
    const double denom = sweeps > 1 ? static_cast<double>(sweeps - 1) : 1.0;
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        const double temperature = schedule.initial_temperature * std::pow(ratio, static_cast<double>(sweep) / denom);
        for (std::size_t v = 0; v < n; ++v) {
            const double delta = flip_delta(model, spins, v);
            if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
                spins[v] = static_cast<Spin>(-spins[v]);
                current += delta;
                if (current < best.energy - 1e-12) {
                    // resync the running total before recording a new best
                    current = energy(model, spins);
                    if (current < best.energy) {
                        best = {spins, current};
                    }
                }
            }
        }
    }
    return best;
}

} // namespace

GroundState anneal(const IsingModel &model, const AnnealSchedule &schedule, std::uint64_t seed) {
    schedule.validate();
    GroundState best{{}, std::numeric_limits<double>::infinity()};
    for (std::size_t r = 0; r < schedule.restarts; ++r) {
        GroundState candidate = anneal_once(model, schedule, CounterRng::derive(seed, r));
        if (candidate.energy < best.energy) {
            best = std::move(candidate);
        }
    }
    return best;
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::size_t line, const char *what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidModel,
                    "line " + std::to_string(line) + ": bad " + what + " '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

IsingModel parse_ising(std::string_view text) {
    std::vector<std::pair<std::size_t, double>> fields;
    std::vector<Coupling> couplings;
    std::size_t vertices = 0;
    std::set<std::size_t> seen_fields;
    std::size_t line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        const auto f = comment_stripped_fields(line);
        if (f.empty()) {
            continue;
        }
        if (f[0] == "h" && f.size() == 3) {
            const auto i = parse_number<std::size_t>(f[1], line_no, "vertex index");
            if (!seen_fields.insert(i).second) {
                throw Error(ErrorCode::InvalidModel, "line " + std::to_string(line_no) + ": h " + std::to_string(i) +
                                                         " given twice");
            }
            fields.emplace_back(i, parse_number<double>(f[2], line_no, "field value"));
            vertices = std::max(vertices, i + 1);
        } else if (f[0] == "J" && f.size() == 4) {
            auto i = parse_number<std::size_t>(f[1], line_no, "vertex index");
            auto j = parse_number<std::size_t>(f[2], line_no, "vertex index");
            if (i == j) {
                throw Error(ErrorCode::InvalidModel, "line " + std::to_string(line_no) + ": self coupling");
            }
            if (i > j) {
                std::swap(i, j);
            }
            couplings.push_back({i, j, parse_number<double>(f[3], line_no, "coupling value")});
            vertices = std::max(vertices, j + 1);
        } else {
            throw Error(ErrorCode::InvalidModel, "line " + std::to_string(line_no) +
                                                     ": expected 'h <i> <value>' or 'J <i> <j> <value>'");
        }
        if (vertices > (std::size_t{1} << 24)) {
            throw Error(ErrorCode::InvalidModel, "line " + std::to_string(line_no) + ": vertex index too large");
        }
    }
    std::vector<double> h(vertices, 0.0);
    for (const auto &[i, value] : fields) {
        h[i] = value;
    }
    return IsingModel(std::move(h), std::move(couplings));
}

IsingModel load_ising(const std::filesystem::path &path) { return parse_ising(read_text_file(path)); }

} // namespace qisa::anneal
