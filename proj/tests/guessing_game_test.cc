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

#include "macrocat/guessing_game.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "macrocat/numerics.h"

namespace macrocat {
namespace {

// Sign agreement of a bivariate normal with correlation ρ: 1/2 + arcsin(ρ)/π. Alice reads x_1 with
// variance cosh 2g / 2, Bob reads the partner quadrature plus detector noise.
double sign_agreement_oracle(double g, double sigma) {
    double c = std::cosh(2 * g) / 2;
    double s = std::sinh(2 * g) / 2;
    double rho = s / std::sqrt(c * (c + sigma * sigma));
    return 0.5 + std::asin(rho) / kPi;
}

// Least-squares slope of y against x.
double slope(const std::vector<double> &x, const std::vector<double> &y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); i++) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TEST(PGuessTms, MatchesArcsineOracle) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> gs(0, 3);
    std::uniform_real_distribution<double> ss(0, 5);
    for (int k = 0; k < 200; k++) {
        double g = gs(rng);
        double s = ss(rng);
        EXPECT_NEAR(p_guess_tms(g, s), sign_agreement_oracle(g, s), 1e-13);
    }
}

TEST(PGuessTms, LimitsAndMonotonicity) {
    EXPECT_DOUBLE_EQ(p_guess_tms(0, 0.3), 0.5);
    EXPECT_DOUBLE_EQ(p_guess_tms(1, INFINITY), 0.5);
    EXPECT_THROW(p_guess_tms(1, -0.1), std::invalid_argument);
    double prev = 1;
    for (double s = 0; s < 10; s += 0.25) {
        double p = p_guess_tms(1.0, s);
        EXPECT_LT(p, prev);
        prev = p;
    }
    prev = 0.5;
    for (double g = 0.1; g < 3; g += 0.1) {
        double p = p_guess_tms(g, 1.0);
        EXPECT_GT(p, prev);
        prev = p;
    }
}

TEST(SigmaMaxTms, RoundTrip) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> gs(0.3, 3);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    int checked = 0;
    while (checked < 200) {
        double g = gs(rng);
        double p = 0.5 + (p_guess_tms(g, 0) - 0.5) * u(rng);
        double s = sigma_max_tms(p, g);
        EXPECT_NEAR(p_guess_tms(g, s), p, 1e-9) << g << " " << p;
        checked++;
    }
    EXPECT_THROW(sigma_max_tms(0.5, 1), std::out_of_range);
    EXPECT_THROW(sigma_max_tms(0.99, 0.3), std::out_of_range);
    EXPECT_NEAR(sigma_max_tms(p_guess_tms(1, 0), 1), 0, 1e-6);
}

TEST(SigmaMaxTms, SqrtNScaling) {
    std::vector<double> log_n;
    std::vector<double> log_s;
    for (double g = 2; g <= 4.001; g += 0.1) {
        double n = 2 * std::sinh(g) * std::sinh(g);
        log_n.push_back(std::log(n));
        log_s.push_back(std::log(sigma_max_tms(0.75, g)));
    }
    EXPECT_NEAR(slope(log_n, log_s), 0.5, 0.02);
}

TEST(SigmaMaxTms, PrintedFormIsADifferentCurve) {
    // The alternative form exists for large squeezing but does not invert p_guess_tms.
    auto printed = sigma_max_tms_printed(0.75, 1.5);
    ASSERT_TRUE(printed.has_value());
    double exact = sigma_max_tms(0.75, 1.5);
    EXPECT_GT(std::abs(*printed - exact), 1e-3);
    EXPECT_FALSE(sigma_max_tms_printed(0.75, 0.05).has_value());
}

TEST(SigmaMaxCat, PrintedBoundaryAndScaling) {
    double alpha = 1.3;
    // Zero tolerable noise exactly where erf(√2 |α|) = P.
    EXPECT_NEAR(sigma_max_cat(std::erf(std::sqrt(2.0) * alpha), alpha), 0, 1e-6);
    EXPECT_THROW(sigma_max_cat(0.9999, 0.5), std::out_of_range);
    EXPECT_THROW(sigma_max_cat(1.0, 2.0), std::out_of_range);
    // σ_max = √(α²/erf⁻¹(P)² - 1/2).
    double e = erf_inv(0.75);
    EXPECT_NEAR(sigma_max_cat(0.75, 2.0), std::sqrt(4 / (e * e) - 0.5), 1e-12);

    // Scaling against the cat's photon number α² tanh α².
    std::vector<double> log_n;
    std::vector<double> log_s;
    for (double a2 = 100; a2 <= 10000; a2 *= 1.5) {
        log_n.push_back(std::log(a2 * std::tanh(a2)));
        log_s.push_back(std::log(sigma_max_cat(0.75, std::sqrt(a2))));
    }
    EXPECT_NEAR(slope(log_n, log_s), 0.5, 0.02);
}

TEST(SigmaMaxCatBinned, InvertsPGuessCat) {
    for (double alpha : {0.5, 1.0, 3.0}) {
        for (double p : {0.55, 0.7, 0.8}) {
            if (p >= p_guess_cat(alpha, 0)) {
                continue;
            }
            double s = sigma_max_cat_binned(p, alpha);
            EXPECT_NEAR(p_guess_cat(alpha, s), p, 1e-9);
        }
    }
    EXPECT_THROW(sigma_max_cat_binned(0.4, 1.0), std::out_of_range);
}

TEST(MonteCarlo, TmsMatchesAnalytic) {
    for (double g : {0.3, 1.0}) {
        for (double s : {0.0, 0.8}) {
            GameParams params{TmsSource{g}, s, 200'000, 17};
            GameResult r = simulate_game(params);
            EXPECT_EQ(r.samples_used, 200'000u);
            EXPECT_NEAR(r.p_guess_empirical, p_guess_tms(g, s), 5 * r.standard_error);
        }
    }
}

TEST(MonteCarlo, CatMatchesAnalytic) {
    for (double alpha : {0.3, 1.0}) {
        GameParams params{CatSource{alpha}, 0.5, 200'000, 18};
        GameResult r = simulate_game(params);
        EXPECT_NEAR(r.p_guess_empirical, p_guess_cat(alpha, 0.5), 5 * r.standard_error);
    }
}

TEST(MonteCarlo, DeterministicPerSeed) {
    GameParams a{TmsSource{0.7}, 0.3, 100'000, 42};
    GameParams b = a;
    b.seed = 43;
    EXPECT_EQ(simulate_game(a).p_guess_empirical, simulate_game(a).p_guess_empirical);
    EXPECT_NE(simulate_game(a).p_guess_empirical, simulate_game(b).p_guess_empirical);
}

TEST(MonteCarlo, RejectsBadParameters) {
    GameParams zero{TmsSource{0.7}, 0.3, 0, 1};
    EXPECT_THROW(simulate_game(zero), std::invalid_argument);
    GameParams neg{CatSource{1.0}, -1, 10, 1};
    EXPECT_THROW(simulate_game(neg), std::invalid_argument);
    GameParams cat{CatSource{1.0}, 0, 10, 1};
    EXPECT_THROW(simulate_tms_game(cat), std::invalid_argument);
}

}  // namespace
}  // namespace macrocat
