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

#include "qisa/isa.hpp"
#include "qisa/kernels/kernels.hpp"
#include "qisa/prng.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstring>

namespace {

using qisa::kernels::cplx;
using qisa::kernels::KernelTable;

std::vector<cplx> random_vector(qisa::CounterRng &rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (auto &c : v) {
        c = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    }
    return v;
}

bool bit_equal(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool bit_equal(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

const std::vector<std::size_t> kSizes = {1, 2, 3, 4, 5, 7, 8, 9, 16, 31, 64, 100, 257};

class KernelEquivalence : public ::testing::Test {
  protected:
    void SetUp() override {
        vec_ = qisa::kernels::avx2_kernels();
        if (vec_ == nullptr) {
            GTEST_SKIP() << "AVX2 kernels unavailable on this machine";
        }
    }
    const KernelTable &ref_ = qisa::kernels::scalar_kernels();
    const KernelTable *vec_ = nullptr;
};

TEST_F(KernelEquivalence, SumNorm2BitIdentical) {
    qisa::CounterRng rng(1);
    for (std::size_t n : kSizes) {
        const auto x = random_vector(rng, n);
        EXPECT_TRUE(bit_equal(ref_.sum_norm2(x), vec_->sum_norm2(x))) << "n=" << n;
    }
}

TEST_F(KernelEquivalence, Norm2BitIdentical) {
    qisa::CounterRng rng(2);
    for (std::size_t n : kSizes) {
        const auto x = random_vector(rng, n);
        std::vector<double> a(n), b(n);
        ref_.norm2(x, a);
        vec_->norm2(x, b);
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_TRUE(bit_equal(a[i], b[i])) << "n=" << n << " i=" << i;
        }
    }
}

TEST_F(KernelEquivalence, ScaleBitIdentical) {
    qisa::CounterRng rng(3);
    for (std::size_t n : kSizes) {
        auto a = random_vector(rng, n);
        auto b = a;
        ref_.scale(a, 0.7071067811865476);
        vec_->scale(b, 0.7071067811865476);
        EXPECT_TRUE(bit_equal(a, b)) << "n=" << n;
    }
}

TEST_F(KernelEquivalence, MatvecBitIdentical) {
    qisa::CounterRng rng(4);
    for (std::size_t n : kSizes) {
        if (n > 100) {
            continue;
        }
        const auto m = random_vector(rng, n * n);
        const auto x = random_vector(rng, n);
        std::vector<cplx> a(n), b(n);
        ref_.matvec(m, x, a);
        vec_->matvec(m, x, b);
        EXPECT_TRUE(bit_equal(a, b)) << "n=" << n;
    }
}

TEST_F(KernelEquivalence, ReflectMeanBitIdentical) {
    qisa::CounterRng rng(5);
    for (std::size_t n : kSizes) {
        const auto x = random_vector(rng, n);
        std::vector<cplx> a(n), b(n);
        ref_.reflect_mean(x, a);
        vec_->reflect_mean(x, b);
        EXPECT_TRUE(bit_equal(a, b)) << "n=" << n;
    }
}

TEST_F(KernelEquivalence, ButterfliesBitIdentical) {
    qisa::CounterRng rng(6);
    for (std::size_t n = 1; n <= 4096; n *= 2) {
        std::vector<cplx> tw(std::max<std::size_t>(n / 2, 1));
        for (std::size_t m = 0; m < tw.size(); ++m) {
            tw[m] = qisa::root_of_unity(m, n);
        }
        auto a = random_vector(rng, n);
        auto b = a;
        ref_.butterflies(a, tw);
        vec_->butterflies(b, tw);
        EXPECT_TRUE(bit_equal(a, b)) << "n=" << n;
    }
}

TEST(KernelScalar, MatvecMatchesNaive) {
    qisa::CounterRng rng(7);
    const std::size_t n = 6;
    const auto m = random_vector(rng, n * n);
    const auto x = random_vector(rng, n);
    std::vector<cplx> y(n);
    qisa::kernels::scalar_kernels().matvec(m, x, y);
    for (std::size_t r = 0; r < n; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            acc += m[r * n + c] * x[c];
        }
        EXPECT_NEAR(std::abs(acc - y[r]), 0.0, 1e-14);
    }
}

TEST(KernelScalar, ReflectMean) {
    const std::vector<cplx> x = {1.0, 0.0, 0.0, 0.0};
    std::vector<cplx> y(4);
    qisa::kernels::scalar_kernels().reflect_mean(x, y);
    EXPECT_EQ(y[0], cplx(-0.5, 0.0));
    EXPECT_EQ(y[1], cplx(0.5, 0.0));
}

TEST(KernelDispatch, SelectByName) {
    const std::string before(qisa::kernels::active().name);
    EXPECT_TRUE(qisa::kernels::select("scalar"));
    EXPECT_EQ(qisa::kernels::active().name, "scalar");
    EXPECT_FALSE(qisa::kernels::select("neon-of-the-future"));
    EXPECT_EQ(qisa::kernels::active().name, "scalar");
    if (qisa::kernels::avx2_kernels() != nullptr) {
        EXPECT_TRUE(qisa::kernels::select("avx2"));
        EXPECT_EQ(qisa::kernels::active().name, "avx2");
    }
    EXPECT_TRUE(qisa::kernels::select(before));
}

} // namespace
