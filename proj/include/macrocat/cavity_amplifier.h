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

// Non-degenerate parametric amplifier H = iχ(a†b† - ab) in a cavity with amplitude loss rate λ
// on both modes.
//
// The state is tracked through three scalars (η, μ, κ) obeying
//   η' = χ μ* - λ η,   μ' = χ η* - λ μ,   κ' = -2χ Re(η μ),
// the same linear flow as the mode operators a, b. Only the products χt and λt matter; χ and λ
// are rates in any common unit.
//
// Variances are reported for the normalised combinations (X_a^θ ∓ X_b^ξ)/√2, so Δ = 1/2 is the
// vacuum level. The two-mode sum variance V(X_a + X_b) used for effective-size claims is 2Δ.
// At λ = 0 the output is tms(-χt) in gaussian_core's convention and Δ₋ = e^{-2χt}/2.

#ifndef MACROCAT_CAVITY_AMPLIFIER_H
#define MACROCAT_CAVITY_AMPLIFIER_H

#include <Eigen/Dense>
#include <complex>
#include <string_view>

namespace macrocat {

struct CavityParams {
    double chi = 1;
    double lambda_ = 0;
    double t = 0;
    std::complex<double> seed_alpha{0, 0};
    std::complex<double> seed_beta{0, 0};
    double theta = 0;
    double xi = 0;
};

/// Throws std::invalid_argument unless χ > 0, λ ≥ 0, t ≥ 0 (all finite).
void validate(const CavityParams &params);

struct DeltaVariances {
    double minus;
    double plus;
};

/// Δ₋ = (λ + χ e^{-2t(λ+χ)}) / (2(λ+χ)),  Δ₊ = (λ - χ e^{2t(χ-λ)}) / (2(λ-χ)).
/// Δ₊ switches to a series in (χ-λ) when |λ-χ| < 1e-6 χ; at λ = χ it equals (1 + 2χt)/2.
DeltaVariances delta_variances(const CavityParams &params);

struct Scalars {
    std::complex<double> eta;
    std::complex<double> mu;
    double kappa;
};

/// Closed-form propagation to params.t.
Scalars propagate_scalars(std::complex<double> eta0, std::complex<double> mu0, double kappa0,
                          const CavityParams &params);

/// Fourth-order Runge–Kutta integration to params.t with n = ceil(t / step) equal steps.
/// Throws PreconditionError when step > 0.01 / max(χ, λ).
Scalars ode_integrate(std::complex<double> eta0, std::complex<double> mu0, double kappa0,
                      const CavityParams &params, double step);

/// Δ± rebuilt from ode_integrate as 1/2 - κ(t)/2, started from (η₀, μ₀) = (1, -1) for Δ₋ and
/// (1, 1) for Δ₊, κ₀ = 0. Independent of the closed forms.
DeltaVariances delta_variances_ode(const CavityParams &params, double step);

/// Joint distribution of (X_a^θ, X_b^ξ) for coherent seeds |α>|β> after time t.
struct JointQuadratureDistribution {
    Eigen::Vector2d mean;
    Eigen::Matrix2d cov;
    /// Principal variances, ascending.
    double delta_minus;
    double delta_plus;
    /// Columns are the principal axes matching delta_minus and delta_plus.
    Eigen::Matrix2d axes;

    double density(double x, double y) const;
};

JointQuadratureDistribution joint_distribution(const CavityParams &params);

/// Density of the joint distribution at (x, y).
double joint_probability(const CavityParams &params, double x, double y);

enum class ThresholdClass { Below, At, Above };

std::string_view to_string(ThresholdClass c);

struct ThresholdReport {
    ThresholdClass classification;
    /// λ / (2(λ+χ)) in every regime.
    double delta_minus_inf;
    /// λ / (2(λ-χ)) below threshold, +∞ otherwise.
    double delta_plus_inf;
    /// Exponential growth rate 2(χ-λ) of Δ₊ above threshold; 0 otherwise (linear growth at
    /// threshold).
    double plus_growth_rate;
    /// As-printed effective-size floor 1 / V_sum = 1 / (2Δ₋^∞) = 1 + χ/λ.
    double n_eff_floor;
};

/// Classification uses |λ - χ| ≤ 1e-12 χ for "at threshold".
ThresholdReport threshold_report(double chi, double lambda_);

}  // namespace macrocat

#endif
