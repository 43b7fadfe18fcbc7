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

#include "macrocat/gaussian_core.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "macrocat/fock_oracle.h"
#include "macrocat/numerics.h"
#include "test_support.h"

namespace macrocat {
namespace {

using testing::random_pure_state;

TEST(Vacuum, MomentsAndVariances) {
    GaussianState v = vacuum(2);
    EXPECT_TRUE(v.mean().isZero());
    EXPECT_TRUE(v.cov().isApprox(0.5 * Eigen::MatrixXd::Identity(4, 4)));
    GaussianState v1 = vacuum(1);
    for (double t = 0; t < 6.3; t += 0.5) {
        EXPECT_NEAR(quadrature_variance(v1, QuadratureObservable({{0, t, 1}})), 0.5, 1e-15);
    }
    EXPECT_DOUBLE_EQ(duan_simon_value(v, 1, 0, kPi / 2, 0, kPi / 2), 2.0);
    EXPECT_DOUBLE_EQ(mean_photon_number(v), 0.0);
    EXPECT_NEAR(quadrature_variance(v, squeezed_position_combination()), 1.0, 1e-15);
}

TEST(Vacuum, ZeroModesRejected) {
    EXPECT_THROW(vacuum(0), std::invalid_argument);
}

TEST(GaussianStateCtor, SymmetrisesAndValidates) {
    Eigen::MatrixXd c(2, 2);
    c << 0.5, 0.1 + 1e-13, 0.1, 0.6;
    GaussianState s(Eigen::VectorXd::Zero(2), c);
    EXPECT_EQ(s.cov()(0, 1), s.cov()(1, 0));
    EXPECT_THROW(GaussianState(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3)), std::invalid_argument);
    EXPECT_THROW(GaussianState(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(4, 4)), std::invalid_argument);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(0, 0) = std::nan("");
    EXPECT_THROW(GaussianState(Eigen::VectorXd::Zero(2), bad), std::invalid_argument);
}

TEST(GaussianStateCtor, PhysicalityCheck) {
    EXPECT_TRUE(vacuum(2).is_physical());
    EXPECT_TRUE(vacuum(2).is_pure());
    GaussianState too_small(Eigen::VectorXd::Zero(2), 0.2 * Eigen::MatrixXd::Identity(2, 2));
    EXPECT_FALSE(too_small.is_physical());
    EXPECT_TRUE(thermal(1.0).is_physical());
    EXPECT_FALSE(thermal(1.0).is_pure());
}

TEST(QuadratureObservable, Validation) {
    EXPECT_THROW(QuadratureObservable(std::vector<QuadratureTerm>{}), std::invalid_argument);
    EXPECT_THROW(QuadratureObservable({{0, 0, 0}}), std::invalid_argument);
    EXPECT_THROW(QuadratureObservable({{0, 0, INFINITY}}), std::invalid_argument);
    QuadratureObservable o({{0, -kPi / 2, 1}});
    EXPECT_NEAR(o.terms()[0].angle, 1.5 * kPi, 1e-15);
    EXPECT_THROW(quadrature_variance(vacuum(1), QuadratureObservable({{1, 0, 1}})), std::out_of_range);
}

TEST(TwoModeSqueezed, CovarianceMatchesClosedForm) {
    for (double g : {0.0, 0.3, 1.0, 2.5, -0.7}) {
        GaussianState s = two_mode_squeezed_vacuum(g);
        double c = std::cosh(2 * g) / 2;
        double sh = std::sinh(2 * g) / 2;
        Eigen::Matrix4d expected;
        expected << c, 0, -sh, 0, 0, c, 0, sh, -sh, 0, c, 0, 0, sh, 0, c;
        EXPECT_TRUE(s.cov().isApprox(expected, 1e-14)) << g;
        EXPECT_NEAR(mean_photon_number(s), 2 * std::sinh(g) * std::sinh(g), 1e-12);
        EXPECT_TRUE(s.is_pure());
    }
    EXPECT_TRUE(two_mode_squeezed_vacuum(0).cov().isApprox(vacuum(2).cov()));
    EXPECT_THROW(two_mode_squeezed_vacuum(NAN), std::invalid_argument);
}

TEST(TwoModeSqueezed, HalfSqueezingDuanSimonValue) {
    GaussianState s = two_mode_squeezed_vacuum(0.5);
    // Correlated difference plus squeezed conjugate combination.
    double v = quadrature_variance(s, correlated_difference(0, 0)) +
               quadrature_variance(s, squeezed_momentum_combination());
    EXPECT_NEAR(v, 2 * std::exp(-1.0), 1e-14);
    EXPECT_NEAR(v, 0.73576, 1e-5);
}

TEST(QuadratureVariance, CorrelatedDifferenceLawRandomised) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> gs(0, 3);
    std::uniform_real_distribution<double> ph(0, 2 * kPi);
    for (int k = 0; k < 100; k++) {
        double g = gs(rng);
        double p1 = ph(rng);
        double p2 = ph(rng);
        GaussianState s = two_mode_squeezed_vacuum(g);
        double expected = std::cosh(2 * g) - std::sinh(2 * g) * std::cos(p1 + p2);
        double got = quadrature_variance(s, correlated_difference(p1, p2));
        EXPECT_NEAR(got, expected, 1e-12 * std::max(1.0, expected));
        // Equal angles: cosh 2g - sinh 2g cos 2φ.
        EXPECT_NEAR(quadrature_variance(s, correlated_difference(p1, p1)),
                    std::cosh(2 * g) - std::sinh(2 * g) * std::cos(2 * p1), 1e-12 * std::cosh(2 * g));
    }
}

TEST(QuadratureVariance, SqueezedConjugateCombination) {
    EXPECT_NEAR(quadrature_variance(two_mode_squeezed_vacuum(0.3), squeezed_momentum_combination()),
                std::exp(-0.6), 1e-14);
    EXPECT_NEAR(quadrature_variance(two_mode_squeezed_vacuum(0.3), correlated_position_sum()), std::exp(0.6),
                1e-14);
    EXPECT_DOUBLE_EQ(correlated_partner_angle(0.2), 0.2 + kPi);
}

TEST(QuadratureVariance, AgreesWithFockOracle) {
    const size_t cutoff = 60;
    FockVector f = tms_fock(0.3, cutoff);
    GaussianState g = two_mode_squeezed_vacuum(0.3);
    const std::array<double, 2> w{1, 1};
    const std::array<double, 2> a{kPi / 2, 3 * kPi / 2};
    EXPECT_NEAR(pure_state_variance(f, local_quadrature_sum(cutoff, a, w)), std::exp(-0.6), 1e-8);
    EXPECT_NEAR(quadrature_variance(g, QuadratureObservable::local_sum(a)), std::exp(-0.6), 1e-12);
}

TEST(DuanSimon, TwoModeSqueezedIdentity) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> gs(0, 3);
    for (int k = 0; k < 100; k++) {
        double g = gs(rng);
        GaussianState s = two_mode_squeezed_vacuum(g);
        EXPECT_NEAR(duan_simon_value(s, 1, 0, kPi / 2, 0, kPi / 2), 2 * std::exp(-2 * g), 1e-12);
        EXPECT_NEAR(duan_simon_squeezed_pair(s), 2 * std::exp(-2 * g), 1e-12);
    }
}

TEST(DuanSimon, SeparableStatesAtLeastTwo) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> nb(0, 3);
    std::uniform_real_distribution<double> av(0.3, 3);
    for (int k = 0; k < 100; k++) {
        GaussianState s = tensor_product(thermal(nb(rng)), thermal(nb(rng)));
        EXPECT_GE(duan_simon_value(s, 1, 0, kPi / 2, 0, kPi / 2), 2 - 1e-12);
        // Product of independent pure states, weighted witness.
        GaussianState p = tensor_product(squeezed_vacuum(nb(rng) - 1.5, 0), squeezed_vacuum(nb(rng) - 1.5, 0));
        double a = av(rng);
        EXPECT_GE(duan_simon_value(p, a, 0, kPi / 2, 0, kPi / 2), a * a + 1 / (a * a) - 1e-9);
    }
}

TEST(DuanSimon, SeparableProductOfVacuaWithWeights) {
    GaussianState v = vacuum(2);
    for (double a : {0.5, 1.0, 2.0}) {
        EXPECT_NEAR(duan_simon_value(v, a, 0, kPi / 2, 0, kPi / 2), a * a + 1 / (a * a), 1e-14);
    }
    EXPECT_THROW(duan_simon_value(v, 0, 0, 0, 0, 0), std::invalid_argument);
    EXPECT_THROW(duan_simon_value(vacuum(1), 1, 0, 0, 0, 0), std::invalid_argument);
}

TEST(ApplyLoss, LimitsAndSumVariance) {
    GaussianState s = two_mode_squeezed_vacuum(0.8);
    const std::array<double, 2> one{1, 1};
    const std::array<double, 2> zero{0, 0};
    EXPECT_TRUE(apply_loss(s, one).cov().isApprox(s.cov(), 1e-15));
    EXPECT_TRUE(apply_loss(s, zero).cov().isApprox(vacuum(2).cov(), 1e-15));
    for (double eta : {0.1, 0.5, 0.9}) {
        const std::array<double, 2> e{eta, eta};
        GaussianState l = apply_loss(s, e);
        EXPECT_NEAR(quadrature_variance(l, squeezed_momentum_combination()), eta * std::exp(-1.6) + (1 - eta),
                    1e-14);
    }
    std::complex<double> alpha[] = {{1.0, 0.5}};
    const std::array<double, 1> e{0.64};
    GaussianState c = apply_loss(coherent(alpha), e);
    EXPECT_NEAR(c.mean()(0), 0.8 * std::sqrt(2.0), 1e-14);
    const std::array<double, 2> bad{1.1, 0.5};
    EXPECT_THROW(apply_loss(s, bad), std::invalid_argument);
    const std::array<double, 1> short_list{0.5};
    EXPECT_THROW(apply_loss(s, short_list), std::invalid_argument);
}

TEST(ApplyQuadratureNoise, RaisesConjugateVariance) {
    GaussianState s = two_mode_squeezed_vacuum(1.0);
    GaussianState same = apply_quadrature_noise(s, 0, 0, 0);
    EXPECT_TRUE(same.cov().isApprox(s.cov(), 1e-15));
    GaussianState n = apply_quadrature_noise(apply_quadrature_noise(s, 0, 0, 0.03), 1, 0, 0.02);
    EXPECT_NEAR(quadrature_variance(n, squeezed_momentum_combination()), std::exp(-2.0) + 0.05, 1e-14);
    // The position combination is untouched by noise generated along X^0.
    EXPECT_NEAR(quadrature_variance(n, squeezed_position_combination()), std::exp(-2.0), 1e-14);
    EXPECT_THROW(apply_quadrature_noise(s, 0, 0, -1), std::invalid_argument);
}

// Oracle: the random-displacement channel on the vacuum, simulated shot by shot with Fock-space
// coherent states. Each shot displaces |0> by e^{iλX^0}, giving <X^{π/2}> = λ and variance 1/2.
TEST(ApplyQuadratureNoise, VacuumMatchesDisplacementMonteCarlo) {
    GaussianState n = apply_quadrature_noise(vacuum(1), 0, 0, 0.5);
    EXPECT_NEAR(quadrature_variance(n, QuadratureObservable({{0, kPi / 2, 1}})), 1.0, 1e-15);

    const size_t cutoff = 40;
    FockOperator xq = quadrature_operator(cutoff, kPi / 2);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> lam(0, std::sqrt(0.5));
    double sum_var = 0;
    double sum_mean = 0;
    double sum_mean_sq = 0;
    const int shots = 20000;
    for (int k = 0; k < shots; k++) {
        double l = lam(rng);
        std::complex<double> beta(0, -l / std::sqrt(2.0));
        Eigen::VectorXcd amps(cutoff + 1);
        std::complex<double> term = std::exp(-std::norm(beta) / 2);
        for (size_t m = 0; m <= cutoff; m++) {
            amps(static_cast<Eigen::Index>(m)) = term;
            term *= beta / std::sqrt(static_cast<double>(m + 1));
        }
        FockVector coh(1, cutoff, amps);
        double mean = pure_state_mean(coh, xq);
        sum_mean += mean;
        sum_mean_sq += mean * mean;
        sum_var += pure_state_variance(coh, xq);
    }
    double mc = sum_var / shots + sum_mean_sq / shots - (sum_mean / shots) * (sum_mean / shots);
    EXPECT_NEAR(mc, 1.0, 0.02);
}

TEST(Channels, PreservePhysicalityRandomised) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gs(0, 3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 200; k++) {
        GaussianState s = two_mode_squeezed_vacuum(gs(rng));
        const std::array<double, 2> e{u(rng), u(rng)};
        GaussianState l = apply_loss(s, e);
        EXPECT_TRUE(l.is_physical(1e-9));
        GaussianState n = apply_quadrature_noise(l, k % 2, 2 * kPi * u(rng), u(rng));
        EXPECT_TRUE(n.is_physical(1e-9));
    }
}

TEST(SymplecticEigenvalues, InvariantUnderRandomSymplectics) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 20; k++) {
        GaussianState p = random_pure_state(3, rng);
        for (double nu : p.symplectic_eigenvalues()) {
            EXPECT_NEAR(nu, 0.5, 1e-9);
        }
    }
    std::vector<double> nu = tensor_product(thermal(0.5), thermal(2.0)).symplectic_eigenvalues();
    ASSERT_EQ(nu.size(), 2u);
    EXPECT_NEAR(nu[0], 1.0, 1e-12);
    EXPECT_NEAR(nu[1], 2.5, 1e-12);
}

TEST(MeanPhotonNumber, CoherentState) {
    std::complex<double> alpha[] = {{1.5, 0}};
    GaussianState c = coherent(alpha);
    EXPECT_NEAR(c.mean()(0), std::sqrt(2.0) * 1.5, 1e-15);
    EXPECT_NEAR(mean_photon_number(c), 2.25, 1e-14);
    EXPECT_NEAR(mean_photon_number(thermal(0.7)), 0.7, 1e-14);
}

TEST(Sampling, VacuumVariance) {
    const std::array<double, 1> a{0};
    Eigen::MatrixXd xs = sample_quadratures(vacuum(1), a, 1'000'000, 1);
    double mean = xs.col(0).mean();
    double var = (xs.col(0).array() - mean).square().mean();
    EXPECT_NEAR(var, 0.5, 0.002);
    EXPECT_NEAR(mean, 0, 5 * std::sqrt(0.5 / 1e6));
}

TEST(Sampling, TwoModeSqueezedCorrelation) {
    const std::array<double, 2> a{0, 0};
    const size_t n = 1'000'000;
    Eigen::MatrixXd xs = sample_quadratures(two_mode_squeezed_vacuum(1.0), a, n, 2);
    Eigen::VectorXd c0 = xs.col(0).array() - xs.col(0).mean();
    Eigen::VectorXd c1 = xs.col(1).array() - xs.col(1).mean();
    double rho = c0.dot(c1) / std::sqrt(c0.squaredNorm() * c1.squaredNorm());
    EXPECT_NEAR(rho, -std::tanh(2.0), 0.003);
    // Within five standard errors of the analytic variance cosh 2 / 2.
    double var = c0.squaredNorm() / n;
    double expected = std::cosh(2.0) / 2;
    EXPECT_NEAR(var, expected, 5 * expected * std::sqrt(2.0 / n));
}

TEST(Sampling, DeterministicAndChunkStable) {
    GaussianState s = two_mode_squeezed_vacuum(0.4);
    const std::array<double, 2> a{0.3, 1.2};
    Eigen::MatrixXd x1 = sample_quadratures(s, a, 70000, 77);
    Eigen::MatrixXd x2 = sample_quadratures(s, a, 70000, 77);
    EXPECT_TRUE(x1 == x2);
    Eigen::MatrixXd c0 = sample_quadrature_chunk(s, a, kSampleChunk, 77, 0);
    Eigen::MatrixXd c1 = sample_quadrature_chunk(s, a, 70000 - kSampleChunk, 77, 1);
    EXPECT_TRUE(x1.topRows(kSampleChunk) == c0);
    EXPECT_TRUE(x1.bottomRows(70000 - kSampleChunk) == c1);
    Eigen::MatrixXd other = sample_quadratures(s, a, 100, 78);
    EXPECT_FALSE(other == x1.topRows(100));
    EXPECT_THROW(sample_quadratures(s, a, 0, 1), std::invalid_argument);
    const std::array<double, 1> short_angles{0};
    EXPECT_THROW(sample_quadratures(s, short_angles, 10, 1), std::invalid_argument);
}

}  // namespace
}  // namespace macrocat
