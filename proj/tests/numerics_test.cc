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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace macrocat {
namespace {

TEST(WrapAngle, ReducesIntoHalfOpenInterval) {
    EXPECT_DOUBLE_EQ(wrap_angle(0), 0);
    EXPECT_NEAR(wrap_angle(2 * kPi), 0, 1e-15);
    EXPECT_NEAR(wrap_angle(-kPi / 2), 1.5 * kPi, 1e-15);
    EXPECT_NEAR(wrap_angle(7 * kPi), kPi, 1e-12);
    for (double t = -20; t < 20; t += 0.37) {
        double w = wrap_angle(t);
        EXPECT_GE(w, 0);
        EXPECT_LT(w, 2 * kPi);
        EXPECT_NEAR(std::remainder(w - t, 2 * kPi), 0, 1e-12);
    }
}

TEST(Bisect, FindsSquareRootOfTwo) {
    double r = bisect([](double x) { return x * x - 2; }, 0, 2, 1e-14);
    EXPECT_NEAR(r, std::sqrt(2.0), 1e-13);
}

TEST(Bisect, RejectsBracketWithoutSignChange) {
    EXPECT_THROW(bisect([](double x) { return x * x + 1; }, -1, 1, 1e-10), std::invalid_argument);
}

TEST(GoldenMaximize, FindsPeakOfParabola) {
    double x = golden_maximize([](double t) { return -(t - 0.3) * (t - 0.3); }, -1, 2, 1e-10);
    EXPECT_NEAR(x, 0.3, 1e-8);
}

TEST(ErfInv, InvertsErfAcrossTheOpenInterval) {
    for (double y = -0.999999; y < 1; y += 0.0123) {
        EXPECT_NEAR(std::erf(erf_inv(y)), y, 1e-13) << y;
    }
    EXPECT_NEAR(erf_inv(0.5), 0.4769362762044699, 1e-14);
}

TEST(ErfInv, EdgeValues) {
    EXPECT_EQ(erf_inv(0), 0);
    EXPECT_TRUE(std::isinf(erf_inv(1)));
    EXPECT_GT(erf_inv(1), 0);
    EXPECT_LT(erf_inv(-1), 0);
    EXPECT_THROW(erf_inv(1.5), std::domain_error);
}

TEST(DeriveStreamSeed, DeterministicAndDistinct) {
    EXPECT_EQ(derive_stream_seed(42, 3), derive_stream_seed(42, 3));
    std::set<uint64_t> seen;
    for (uint64_t s = 0; s < 1000; s++) {
        seen.insert(derive_stream_seed(0xC0FFEE, s));
    }
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(derive_stream_seed(1, 0), derive_stream_seed(2, 0));
}

}  // namespace
}  // namespace macrocat
