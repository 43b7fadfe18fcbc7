// Copyright 2026 The macrocat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "macrocat/numerics.h"

#include <algorithm>
#include <cmath>

namespace macrocat {

double wrap_angle(double theta) {
    double r = std::fmod(theta, 2 * kPi);
    if (r < 0) {
        r += 2 * kPi;
    }
    if (r >= 2 * kPi) {
        r = 0;
    }
    return r;
}

double bisect(const std::function<double(double)> &f, double lo, double hi, double tol, int max_iter) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0) {
        return lo;
    }
    if (f_hi == 0) {
        return hi;
    }
    if ((f_lo < 0) == (f_hi < 0)) {
        throw std::invalid_argument("bisect: bracket does not enclose a sign change");
    }
    for (int k = 0; k < max_iter && hi - lo > tol; k++) {
        double mid = 0.5 * (lo + hi);
        double f_mid = f(mid);
        if (f_mid == 0) {
            return mid;
        }
        if ((f_mid < 0) == (f_lo < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double golden_maximize(const std::function<double(double)> &f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double erf_inv(double y) {
    if (!(y > -1 && y < 1)) {
        if (y == 1) {
            return INFINITY;
        }
        if (y == -1) {
            return -INFINITY;
        }
        throw std::domain_error("erf_inv: argument outside [-1, 1]");
    }
    if (y == 0) {
        return 0;
    }
    // Winitzki's approximation as the starting point.
    const double a = 0.147;
    double ln = std::log1p(-y * y);
    double t = 2 / (kPi * a) + ln / 2;
    double x = std::copysign(std::sqrt(std::sqrt(t * t - ln / a) - t), y);
    const double two_over_sqrt_pi = 2 / std::sqrt(kPi);
    for (int k = 0; k < 60; k++) {
        double residual = std::erf(x) - y;
        double slope = two_over_sqrt_pi * std::exp(-x * x);
        double step = residual / slope;
        // Halley correction; keeps the tail (|y| → 1) from overshooting.
        step /= 1 + x * step;
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) {
            break;
        }
    }
    return x;
}

uint64_t derive_stream_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace macrocat
