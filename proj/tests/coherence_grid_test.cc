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

#include "macrocat/coherence_grid.h"

#include <gtest/gtest.h>

#include <cmath>

#include "macrocat/fock_oracle.h"
#include "macrocat/macroscopicity.h"
#include "macrocat/numerics.h"

namespace macrocat {
namespace {

const GridSpec kSpec(8, 256);

TEST(GridSpec, Validation) {
    EXPECT_THROW(GridSpec(8, 100), std::invalid_argument);
    EXPECT_THROW(GridSpec(8, 4), std::invalid_argument);
    EXPECT_THROW(GridSpec(0, 64), std::invalid_argument);
    GridSpec s(4, 8);
    EXPECT_DOUBLE_EQ(s.coordinate(0), -4);
    EXPECT_DOUBLE_EQ(s.coordinate(7), 4);
    EXPECT_EQ(s.coordinates().size(), 8u);
}

TEST(Envelope, FactorsAndDerivatives) {
    EnvelopeModel g = EnvelopeModel::gaussian(2, 3);
    EXPECT_DOUBLE_EQ(g.factor(0, 0), 1);
    EXPECT_NEAR(g.factor(0, 1), std::exp(-1.0 / 8), 1e-15);
    EXPECT_NEAR(g.factor_minus_one(1, 1e-9), -1e-18 / 18, 1e-30);
    EXPECT_NEAR(g.second_derivative_at_zero(0), -0.25, 1e-15);
    EXPECT_NEAR(g.second_derivative_at_zero(1), -1.0 / 9, 1e-15);
    EnvelopeModel s = EnvelopeModel::step(0.1);
    EXPECT_EQ(s.factor(0, 0.05), 1);
    EXPECT_EQ(s.factor(1, 0.2), 0);
    EXPECT_THROW(s.second_derivative_at_zero(0), UnsupportedEnvelopeError);
    EXPECT_EQ(EnvelopeModel::unity().second_derivative_at_zero(0), 0);
    EXPECT_THROW(EnvelopeModel::gaussian(0, 1), std::invalid_argument);
    EXPECT_THROW(EnvelopeModel::step(-1), std::invalid_argument);
}

TEST(GridState, NormalisedOnConstruction) {
    GridState v = gaussian_grid_state(kSpec, 1, 1);
    EXPECT_NEAR(v.norm(), 1, 1e-14);
    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(256, 256);
    EXPECT_THROW(GridState(kSpec, zero, EnvelopeModel::unity()), std::invalid_argument);
    EXPECT_THROW(GridState(kSpec, Eigen::MatrixXcd::Ones(8, 8), EnvelopeModel::unity()), std::invalid_argument);
}

TEST(Moments, Vacuum) {
    GridState v = gaussian_grid_state(kSpec, 1, 1);
    MomentumMoments m = momentum_moments_ideal(v);
    EXPECT_NEAR(m.p1_sq, 0.5, 1e-10);
    EXPECT_NEAR(m.p2_sq, 0.5, 1e-10);
    EXPECT_NEAR(m.p1p2, 0, 1e-12);
    PositionMoments x = position_moments(v);
    EXPECT_NEAR(x.x1_sq, 0.5, 1e-10);
    EXPECT_NEAR(x.variance_sum(), 1.0, 1e-10);
}

TEST(Moments, SqueezedWidths) {
    GridState s = gaussian_grid_state(kSpec, 0.7, 1.6);
    MomentumMoments m = momentum_moments_ideal(s);
    EXPECT_NEAR(m.p1_sq, 1 / (2 * 0.49), 1e-9);
    EXPECT_NEAR(m.p2_sq, 1 / (2 * 2.56), 1e-9);
    PositionMoments x = position_moments(s);
    EXPECT_NEAR(x.x1_sq, 0.49 / 2, 1e-10);
    EXPECT_NEAR(x.x2_sq, 2.56 / 2, 1e-10);
}

TEST(Moments, TmsFromFockMatchesClosedForm) {
    const double g = 0.4;
    GridState s = grid_state_from_fock(kSpec, tms_fock(g, 30));
    MomentumMoments m = momentum_moments_ideal(s);
    EXPECT_NEAR(m.variance_difference(), std::exp(-0.8), 1e-4);
    EXPECT_NEAR(position_moments(s).variance_sum(), std::exp(-0.8), 1e-4);
    // Same as the closed-form wavefunction.
    MomentumMoments c = momentum_moments_ideal(tms_grid_state(kSpec, g));
    EXPECT_NEAR(c.variance_difference(), std::exp(-0.8), 1e-10);
    EXPECT_NEAR(c.variance_sum(), std::exp(0.8), 1e-10);
}

TEST(Moments, MomentumKickShiftsFirstMoment) {
    const double k = 0.7;
    GridState s = grid_state_from_function(kSpec, [k](double x1, double x2) {
        return std::exp(-(x1 * x1 + x2 * x2) / 2) * std::polar(1.0, k * x1);
    });
    MomentumMoments ideal = momentum_moments_ideal(s);
    EXPECT_NEAR(ideal.p1, k, 1e-10);
    EXPECT_NEAR(ideal.p2, 0, 1e-12);
    EXPECT_NEAR(ideal.p1_sq, 0.5 + k * k, 1e-9);
    MomentumMoments direct = momentum_moments_direct(s);
    EXPECT_NEAR(direct.p1, k, 1e-8);
    EXPECT_NEAR(direct.p1_sq, 0.5 + k * k, 1e-8);
}

TEST(Moments, OddAmplitudeHasZeroMeanMomentum) {
    GridState s = grid_state_from_function(kSpec, [](double x1, double x2) {
        return x1 * std::exp(-(x1 * x1 + x2 * x2) / 2);
    });
    MomentumMoments m = momentum_moments_ideal(s);
    EXPECT_NEAR(m.p1, 0, 1e-12);
    // First excited state: <p²> = 3/2.
    EXPECT_NEAR(m.p1_sq, 1.5, 1e-9);
    EXPECT_NEAR(momentum_moments_direct(s).p1, 0, 1e-10);
}

TEST(Decoherence, PathsAgreeAcrossGammaGrid) {
    GridState base = tms_grid_state(kSpec, 0.5);
    for (double g1 : {0.5, 1.0, 2.0, 5.0}) {
        for (double g2 : {0.5, 1.5, 5.0}) {
            GridState s = base.with_envelope(EnvelopeModel::gaussian(g1, g2));
            MomentumMoments a = momentum_moments_decomposition(s);
            MomentumMoments b = momentum_moments_direct(s);
            EXPECT_NEAR(a.p1_sq, b.p1_sq, 1e-6) << g1 << " " << g2;
            EXPECT_NEAR(a.p2_sq, b.p2_sq, 1e-6);
            EXPECT_NEAR(a.p1p2, b.p1p2, 1e-6);
            EXPECT_NEAR(a.p1, b.p1, 1e-6);
        }
    }
}

TEST(Decoherence, GaussianCorrectionAddsInverseWidths) {
    GridState base = tms_grid_state(kSpec, 0.5);
    double ideal = momentum_moments_ideal(base).variance_difference();
    for (double g1 : {0.7, 3.0}) {
        for (double g2 : {1.1, 4.0}) {
            GridState s = base.with_envelope(EnvelopeModel::gaussian(g1, g2));
            double extra = momentum_moments_direct(s).variance_difference() - ideal;
            EXPECT_NEAR(extra, 1 / (g1 * g1) + 1 / (g2 * g2), 1e-6);
        }
    }
}

TEST(Decoherence, CertifiedWidthNeverExceedsTrueWidth) {
    for (double g : {0.3, 1.0, 2.0}) {
        GridState base = tms_grid_state(kSpec, g);
        for (double gamma : {0.5, 1.0, 3.0, 10.0}) {
            GridState s = base.with_envelope(EnvelopeModel::gaussian(gamma, 1.5 * gamma));
            double v = momentum_moments_direct(s).variance_difference();
            EXPECT_LE(certified_coherence_width(v), gamma + 1e-12);
            EXPECT_DOUBLE_EQ(certified_coherence_width(v), coherence_range(v));
        }
    }
}

TEST(Decoherence, StepEnvelopeLeavesSecondMomentsUnchanged) {
    GridState base = tms_grid_state(kSpec, 0.5);
    double reference = grid_duan_simon_value(base);
    EXPECT_NEAR(reference, 2 * std::exp(-1.0), 1e-8);
    for (double eps : {0.02, 0.05, 0.1, 0.25, 0.5}) {
        GridState s = base.with_envelope(EnvelopeModel::step(eps));
        EXPECT_NEAR(grid_duan_simon_value(s), reference, 1e-3) << eps;
    }
    GridState step = base.with_envelope(EnvelopeModel::step(0.1));
    EXPECT_THROW(momentum_moments_decomposition(step), UnsupportedEnvelopeError);
    DecoheredMoments d = momentum_moments_decohered(step);
    EXPECT_FALSE(d.decomposition.has_value());
    EXPECT_THROW(momentum_moments_direct(base.with_envelope(EnvelopeModel::step(1e-3))), std::invalid_argument);
    DecoheredMoments gd = momentum_moments_decohered(base.with_envelope(EnvelopeModel::gaussian(2, 2)));
    EXPECT_TRUE(gd.decomposition.has_value());
}

TEST(Decoherence, KernelIsPositiveSemidefinite) {
    GridSpec spec(6, 64);
    GridState base = tms_grid_state(spec, 0.4);
    for (double gamma : {0.5, 2.0}) {
        EXPECT_GE(kernel_min_eigenvalue(base.with_envelope(EnvelopeModel::gaussian(gamma, gamma)), 2), -1e-8);
    }
    EXPECT_GE(kernel_min_eigenvalue(base, 2), -1e-8);
    EXPECT_THROW(kernel_min_eigenvalue(base, 0), std::invalid_argument);
    EXPECT_THROW(kernel_min_eigenvalue(tms_grid_state(kSpec, 0.4), 1), std::invalid_argument);
}

TEST(Nyquist, CoarseGridRejected) {
    GridState s = tms_grid_state(GridSpec(8, 32), 1.5);
    EXPECT_THROW(momentum_moments_ideal(s), NyquistError);
    EXPECT_THROW(momentum_moments_direct(s), NyquistError);
}

}  // namespace
}  // namespace macrocat
