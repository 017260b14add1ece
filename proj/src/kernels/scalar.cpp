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

#include <cassert>

namespace qisa::kernels::scalar {

namespace {

inline const double *flat(std::span<const cplx> x) { return reinterpret_cast<const double *>(x.data()); }
inline double *flat(std::span<cplx> x) { return reinterpret_cast<double *>(x.data()); }

} // namespace

double sum_norm2(std::span<const cplx> x) {
    const double *d = flat(x);
    const std::size_t pairs = x.size() / 2;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < pairs; ++c) {
        for (int l = 0; l < 4; ++l) {
            const double v = d[4 * c + l];
            acc[l] += v * v;
        }
    }
    if (x.size() % 2 != 0) {
        const double re = d[4 * pairs];
        const double im = d[4 * pairs + 1];
        acc[0] += re * re;
        acc[1] += im * im;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void norm2(std::span<const cplx> x, std::span<double> out) {
    assert(out.size() >= x.size());
    const double *d = flat(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double re = d[2 * i];
        const double im = d[2 * i + 1];
        out[i] = re * re + im * im;
    }
}

void scale(std::span<cplx> x, double s) {
    double *d = flat(x);
    for (std::size_t i = 0; i < 2 * x.size(); ++i) {
        d[i] *= s;
    }
}

void matvec(std::span<const cplx> m, std::span<const cplx> x, std::span<cplx> y) {
    const std::size_t n = x.size();
    assert(m.size() >= n * n && y.size() >= n);
    const double *xd = flat(x);
    const std::size_t pairs = n / 2;
    for (std::size_t r = 0; r < n; ++r) {
        const double *md = flat(m.subspan(r * n, n));
        double direct[4] = {0.0, 0.0, 0.0, 0.0};
        double crossed[4] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t c = 0; c < pairs; ++c) {
            const double *mv = md + 4 * c;
            const double *xv = xd + 4 * c;
            direct[0] += mv[0] * xv[0];
            direct[1] += mv[1] * xv[1];
            direct[2] += mv[2] * xv[2];
            direct[3] += mv[3] * xv[3];
            crossed[0] += mv[0] * xv[1];
            crossed[1] += mv[1] * xv[0];
            crossed[2] += mv[2] * xv[3];
            crossed[3] += mv[3] * xv[2];
        }
        if (n % 2 != 0) {
            const double *mv = md + 4 * pairs;
            const double *xv = xd + 4 * pairs;
            direct[0] += mv[0] * xv[0];
            direct[1] += mv[1] * xv[1];
            crossed[0] += mv[0] * xv[1];
            crossed[1] += mv[1] * xv[0];
        }
        y[r] = cplx((direct[0] - direct[1]) + (direct[2] - direct[3]),
                    (crossed[0] + crossed[1]) + (crossed[2] + crossed[3]));
    }
}

void reflect_mean(std::span<const cplx> x, std::span<cplx> y) {
    const std::size_t n = x.size();
    assert(y.size() >= n);
    const double *xd = flat(x);
    const std::size_t pairs = n / 2;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < pairs; ++c) {
        for (int l = 0; l < 4; ++l) {
            acc[l] += xd[4 * c + l];
        }
    }
    if (n % 2 != 0) {
        acc[0] += xd[4 * pairs];
        acc[1] += xd[4 * pairs + 1];
    }
    const double factor = 2.0 / static_cast<double>(n);
    const double mean_re = factor * (acc[0] + acc[2]);
    const double mean_im = factor * (acc[1] + acc[3]);
    double *yd = flat(y);
    for (std::size_t i = 0; i < n; ++i) {
        yd[2 * i] = mean_re - xd[2 * i];
        yd[2 * i + 1] = mean_im - xd[2 * i + 1];
    }
}

void butterflies(std::span<cplx> data, std::span<const cplx> twiddles) {
    const std::size_t n = data.size();
    double *d = flat(data);
    const double *w = flat(twiddles);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const double wr = w[2 * k * step];
                const double wi = w[2 * k * step + 1];
                double *lo = d + 2 * (start + k);
                double *hi = d + 2 * (start + k + half);
                const double tr = hi[0] * wr - hi[1] * wi;
                const double ti = hi[1] * wr + hi[0] * wi;
                const double ur = lo[0];
                const double ui = lo[1];
                lo[0] = ur + tr;
                lo[1] = ui + ti;
                hi[0] = ur - tr;
                hi[1] = ui - ti;
            }
        }
    }
}

} // namespace qisa::kernels::scalar
