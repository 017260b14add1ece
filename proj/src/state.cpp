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

#include "qisa/state.hpp"

#include "qisa/error.hpp"
#include "qisa/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <unordered_set>

namespace qisa {

// ---------------------------------------------------------------- Unitary

Unitary Unitary::from_rows(std::size_t dim, std::vector<Amplitude> row_major, double tolerance) {
    if (dim == 0 || row_major.size() != dim * dim) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix has " + std::to_string(row_major.size()) + " entries, expected " +
                        std::to_string(dim * dim));
    }
    for (const Amplitude &a : row_major) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw Error(ErrorCode::NotUnitary, "matrix has a non-finite entry");
        }
    }
    Unitary u(dim, std::move(row_major));
    const double err = u.unitarity_error();
    if (!(err <= tolerance)) {
        throw Error(ErrorCode::NotUnitary, "max|U^dagger U - I| = " + std::to_string(err));
    }
    return u;
}

Unitary Unitary::trusted(std::size_t dim, std::vector<Amplitude> row_major) {
    if (row_major.size() != dim * dim) {
        throw Error(ErrorCode::DimensionMismatch, "matrix size does not match dimension");
    }
    return Unitary(dim, std::move(row_major));
}

double Unitary::unitarity_error() const {
    double worst = 0.0;
    for (std::size_t a = 0; a < dim_; ++a) {
        for (std::size_t b = 0; b < dim_; ++b) {
            Amplitude sum = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) {
                sum += std::conj(entries_[k * dim_ + a]) * entries_[k * dim_ + b];
            }
            if (a == b) {
                sum -= 1.0;
            }
            worst = std::max(worst, std::abs(sum));
        }
    }
    return worst;
}

// ------------------------------------------------------------- JointState

JointState::JointState(std::vector<RegisterDecl> registers, const Limits &limits)
    : registers_(std::move(registers)) {
    if (registers_.empty()) {
        throw Error(ErrorCode::EmptyRegisterList, "a state needs at least one register");
    }
    std::unordered_set<std::string> names;
    for (const RegisterDecl &r : registers_) {
        if (r.width == 0 || r.width > limits.max_register_width) {
            throw Error(ErrorCode::WidthExceeded, "register '" + r.name + "' has width " + std::to_string(r.width) +
                                                      " (allowed 1.." +
                                                      std::to_string(limits.max_register_width) + ")");
        }
        if (!names.insert(r.name).second) {
            throw Error(ErrorCode::ContractError, "duplicate register name '" + r.name + "'");
        }
        total_width_ += r.width;
    }
    if (total_width_ > limits.max_total_width || total_width_ > 62) {
        throw Error(ErrorCode::WidthExceeded, "total width " + std::to_string(total_width_) + " exceeds " +
                                                  std::to_string(limits.max_total_width));
    }
    offsets_.resize(registers_.size());
    unsigned offset = 0;
    for (std::size_t i = registers_.size(); i-- > 0;) {
        offsets_[i] = offset;
        offset += registers_[i].width;
    }
}

JointState JointState::zero(std::vector<RegisterDecl> registers, const Limits &limits) {
    JointState s(std::move(registers), limits);
    s.keys_.push_back(0);
    s.amps_.emplace_back(1.0, 0.0);
    return s;
}

JointState JointState::from_points(std::vector<RegisterDecl> registers,
                                   const std::vector<std::pair<BasisPoint, Amplitude>> &points,
                                   const Limits &limits) {
    JointState s(std::move(registers), limits);
    std::map<std::uint64_t, Amplitude> merged;
    for (const auto &[point, amp] : points) {
        merged[s.encode(point)] += amp;
    }
    for (const auto &[key, amp] : merged) {
        s.keys_.push_back(key);
        s.amps_.push_back(amp);
    }
    s.prune_and_renormalize();
    return s;
}

JointState JointState::from_dense(std::vector<RegisterDecl> registers, std::span<const Amplitude> amplitudes,
                                  const Limits &limits) {
    JointState s(std::move(registers), limits);
    if (amplitudes.size() != s.total_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "dense vector has " + std::to_string(amplitudes.size()) +
                                                      " entries, expected " + std::to_string(s.total_dim()));
    }
    for (std::uint64_t k = 0; k < amplitudes.size(); ++k) {
        s.keys_.push_back(k);
        s.amps_.push_back(amplitudes[k]);
    }
    s.prune_and_renormalize();
    return s;
}

void JointState::check_register(std::size_t reg) const {
    if (reg >= registers_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "register index " + std::to_string(reg) + " out of range");
    }
}

std::uint64_t JointState::dim(std::size_t reg) const {
    check_register(reg);
    return registers_[reg].dim();
}

std::uint64_t JointState::register_mask(std::size_t reg) const {
    check_register(reg);
    return (registers_[reg].dim() - 1) << offsets_[reg];
}

unsigned JointState::register_offset(std::size_t reg) const {
    check_register(reg);
    return offsets_[reg];
}

std::uint64_t JointState::encode(const BasisPoint &point) const {
    if (point.size() != registers_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "basis point has " + std::to_string(point.size()) +
                                                      " coordinates, expected " +
                                                      std::to_string(registers_.size()));
    }
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i] >= registers_[i].dim()) {
            throw Error(ErrorCode::IndexOutOfRange, "value " + std::to_string(point[i]) + " out of range for '" +
                                                        registers_[i].name + "'");
        }
        key |= point[i] << offsets_[i];
    }
    return key;
}

BasisPoint JointState::decode(std::uint64_t key) const {
    BasisPoint p(registers_.size());
    for (std::size_t i = 0; i < registers_.size(); ++i) {
        p[i] = (key >> offsets_[i]) & (registers_[i].dim() - 1);
    }
    return p;
}

BasisPoint JointState::point(std::size_t entry) const { return decode(keys_.at(entry)); }

std::uint64_t JointState::coordinate(std::size_t entry, std::size_t reg) const {
    return (keys_[entry] >> offsets_[reg]) & (registers_[reg].dim() - 1);
}

Amplitude JointState::amplitude_at(const BasisPoint &point) const {
    const std::uint64_t key = encode(point);
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) {
        return {0.0, 0.0};
    }
    return amps_[static_cast<std::size_t>(it - keys_.begin())];
}

double JointState::norm2() const { return kernels::active().sum_norm2(amps_); }

std::vector<Amplitude> JointState::to_dense() const {
    std::vector<Amplitude> dense(total_dim());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        dense[keys_[i]] = amps_[i];
    }
    return dense;
}

void JointState::prune_and_renormalize() {
    const kernels::KernelTable &k = kernels::active();
    std::vector<double> weights(amps_.size());
    k.norm2(amps_, weights);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (weights[i] >= kPruneThreshold) {
            keys_[kept] = keys_[i];
            amps_[kept] = amps_[i];
            ++kept;
        }
    }
    keys_.resize(kept);
    amps_.resize(kept);
    const double total = k.sum_norm2(amps_);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw Error(ErrorCode::ZeroProbabilityBranch, "state has no amplitude left to normalize");
    }
    // Unitary steps only drift by rounding; rescaling those would perturb
    // amplitudes the instruction never touched.
    if (std::abs(total - 1.0) > 1e-14) {
        k.scale(amps_, 1.0 / std::sqrt(total));
    }
}

JointState JointState::map_register(std::size_t reg, const RegisterKernel &kernel) const {
    check_register(reg);
    const std::uint64_t d = registers_[reg].dim();
    const unsigned offset = offsets_[reg];
    const std::uint64_t mask = register_mask(reg);

    // Order entry indices by the remaining coordinates; keys are already sorted,
    // so a stable sort keeps the register value ascending inside each group.
    std::vector<std::size_t> order(keys_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (offset != 0) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return (keys_[a] & ~mask) < (keys_[b] & ~mask);
        });
    }

    JointState out = *this;
    out.keys_.clear();
    out.amps_.clear();
    std::vector<Amplitude> in_buf(d);
    std::vector<Amplitude> out_buf(d);
    std::vector<double> weights(d);
    const kernels::KernelTable &k = kernels::active();

    for (std::size_t g = 0; g < order.size();) {
        const std::uint64_t rest = keys_[order[g]] & ~mask;
        std::fill(in_buf.begin(), in_buf.end(), Amplitude{});
        std::size_t e = g;
        for (; e < order.size() && (keys_[order[e]] & ~mask) == rest; ++e) {
            in_buf[(keys_[order[e]] & mask) >> offset] = amps_[order[e]];
        }
        kernel(in_buf, out_buf);
        k.norm2(out_buf, weights);
        for (std::uint64_t v = 0; v < d; ++v) {
            if (weights[v] >= kPruneThreshold) {
                out.keys_.push_back(rest | (v << offset));
                out.amps_.push_back(out_buf[v]);
            }
        }
        g = e;
    }

    if (offset != 0) {
        std::vector<std::size_t> perm(out.keys_.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return out.keys_[a] < out.keys_[b]; });
        std::vector<std::uint64_t> keys(perm.size());
        std::vector<Amplitude> amps(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            keys[i] = out.keys_[perm[i]];
            amps[i] = out.amps_[perm[i]];
        }
        out.keys_ = std::move(keys);
        out.amps_ = std::move(amps);
    }
    out.prune_and_renormalize();
    return out;
}

JointState JointState::permute_keys(const std::function<std::uint64_t(std::uint64_t)> &permute) const {
    std::vector<std::pair<std::uint64_t, Amplitude>> moved;
    moved.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        moved.emplace_back(permute(keys_[i]), amps_[i]);
    }
    std::sort(moved.begin(), moved.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    JointState out = *this;
    for (std::size_t i = 0; i < moved.size(); ++i) {
        if (i > 0 && moved[i].first == moved[i - 1].first) {
            throw Error(ErrorCode::ContractError, "key relabeling is not a bijection");
        }
        out.keys_[i] = moved[i].first;
        out.amps_[i] = moved[i].second;
    }
    return out;
}

JointState JointState::scale_branch(std::size_t reg, std::uint64_t value, Amplitude factor) const {
    check_register(reg);
    JointState out = *this;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (coordinate(i, reg) == value) {
            out.amps_[i] *= factor;
        }
    }
    out.prune_and_renormalize();
    return out;
}

JointState JointState::restrict_to(std::size_t reg, std::uint64_t value) const {
    check_register(reg);
    JointState out = *this;
    out.keys_.clear();
    out.amps_.clear();
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        if (coordinate(i, reg) == value) {
            out.keys_.push_back(keys_[i]);
            out.amps_.push_back(amps_[i]);
        }
    }
    if (out.keys_.empty()) {
        throw Error(ErrorCode::ZeroProbabilityBranch,
                    "register '" + registers_[reg].name + "' has zero probability of value " + std::to_string(value));
    }
    if (out.keys_.size() == keys_.size()) {
        return *this;
    }
    out.prune_and_renormalize();
    return out;
}

// ------------------------------------------------------- free operations

JointState init_zero(std::vector<RegisterDecl> registers, const Limits &limits) {
    return JointState::zero(std::move(registers), limits);
}

std::vector<double> marginal(const JointState &state, std::size_t reg) {
    const std::uint64_t d = state.dim(reg);
    std::vector<double> weights(state.size());
    kernels::active().norm2(state.amplitudes(), weights);
    std::vector<std::pair<std::uint64_t, double>> tagged(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        tagged[i] = {state.coordinate(i, reg), weights[i]};
    }
    std::sort(tagged.begin(), tagged.end());
    std::vector<double> probs(d, 0.0);
    for (const auto &[value, w] : tagged) {
        probs[value] += w;
    }
    return probs;
}

JointState collapse(const JointState &state, std::size_t reg, std::uint64_t value) {
    if (value >= state.dim(reg)) {
        throw Error(ErrorCode::IndexOutOfRange, "collapse value " + std::to_string(value) + " out of range");
    }
    return state.restrict_to(reg, value);
}

JointState apply_on_register(const JointState &state, std::size_t reg, const Unitary &transform) {
    if (transform.dim() != state.dim(reg)) {
        throw Error(ErrorCode::DimensionMismatch, "transform is " + std::to_string(transform.dim()) +
                                                      "-dimensional but register '" +
                                                      state.registers()[reg].name + "' has dimension " +
                                                      std::to_string(state.dim(reg)));
    }
    const kernels::KernelTable &k = kernels::active();
    return state.map_register(reg, [&](std::span<const Amplitude> in, std::span<Amplitude> out) {
        k.matvec(transform.data(), in, out);
    });
}

namespace {

std::string format_real(double v) {
    if (v == 0.0) {
        v = 0.0; // folds -0 into 0
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::vector<std::string> dump_state(const JointState &state) {
    std::vector<std::string> lines;
    lines.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        std::string line;
        for (std::size_t r = 0; r < state.register_count(); ++r) {
            if (r > 0) {
                line += ',';
            }
            line += std::to_string(state.coordinate(i, r));
        }
        const Amplitude a = state.amplitudes()[i];
        line += "  " + format_real(a.real()) + " " + format_real(a.imag());
        lines.push_back(std::move(line));
    }
    return lines;
}

} // namespace qisa
