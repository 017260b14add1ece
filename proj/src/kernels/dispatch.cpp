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

#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qisa::kernels {

namespace {

const KernelTable kScalar{
    "scalar",
    &scalar::sum_norm2,
    &scalar::norm2,
    &scalar::scale,
    &scalar::matvec,
    &scalar::reflect_mean,
    &scalar::butterflies,
};

#if defined(QISA_HAVE_AVX2_KERNELS)
const KernelTable kAvx2{
    "avx2",
    &avx2::sum_norm2,
    &avx2::norm2,
    &avx2::scale,
    &avx2::matvec,
    &avx2::reflect_mean,
    &avx2::butterflies,
};
#endif

bool cpu_has_avx2() noexcept {
#if defined(QISA_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const KernelTable *lookup(std::string_view name) noexcept {
    if (name == "scalar") {
        return &kScalar;
    }
    if (name == "avx2") {
        return avx2_kernels();
    }
    return nullptr;
}

const KernelTable *initial_table() noexcept {
    if (const char *env = std::getenv("QISA_KERNELS")) {
        if (const KernelTable *table = lookup(env)) {
            return table;
        }
    }
    if (const KernelTable *table = avx2_kernels()) {
        return table;
    }
    return &kScalar;
}

std::atomic<const KernelTable *> &current() noexcept {
    static std::atomic<const KernelTable *> table{initial_table()};
    return table;
}

} // namespace

const KernelTable &scalar_kernels() noexcept { return kScalar; }

const KernelTable *avx2_kernels() noexcept {
#if defined(QISA_HAVE_AVX2_KERNELS)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) noexcept {
    const KernelTable *table = lookup(name);
    if (table == nullptr) {
        return false;
    }
    current().store(table, std::memory_order_release);
    return true;
}

} // namespace qisa::kernels
