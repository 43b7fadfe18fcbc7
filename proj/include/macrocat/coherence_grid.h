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

// Two-mode states on a position grid with a separable decoherence envelope:
//
//   ρ(x₁, x₂; x̄₁, x̄₂) = p(x₁, x₂) p*(x̄₁, x̄₂) f₁(x₁ - x̄₁) f₂(x₂ - x̄₂).
//
// The four-index kernel is never formed. Every momentum moment is a derivative at d = 0 of
// K(d) = A(d) f₁(d₁) f₂(d₂), where A(d) = ∫ p*(x) p(x + d) dx is the autocorrelation of p, and
// A is available in closed form from |p̃(k)|² on the FFT grid.

#ifndef MACROCAT_COHERENCE_GRID_H
#define MACROCAT_COHERENCE_GRID_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "macrocat/fock_oracle.h"

namespace macrocat {

/// Raised when the grid cannot resolve the state's momentum content.
class NyquistError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when an envelope lacks the derivatives a computation needs.
class UnsupportedEnvelopeError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform grid on [-L, L] with M points per axis (M a power of two, M ≥ 8).
struct GridSpec {
    double half_range;
    size_t points;

    GridSpec(double half_range, size_t points);

    double spacing() const {
        return 2 * half_range / static_cast<double>(points - 1);
    }
    double coordinate(size_t i) const {
        return -half_range + static_cast<double>(i) * spacing();
    }
    std::vector<double> coordinates() const;
};

/// Separable envelope f₁(d₁) f₂(d₂).
struct EnvelopeModel {
    enum class Kind { Unity, Gaussian, Step };

    Kind kind = Kind::Unity;
    double gamma1 = 0;
    double gamma2 = 0;
    double epsilon = 0;

    static EnvelopeModel unity();
    /// e^{-d₁²/(2γ₁²)} e^{-d₂²/(2γ₂²)}.
    static EnvelopeModel gaussian(double gamma1, double gamma2);
    /// 1 when |d| < ε on an axis, 0 otherwise.
    static EnvelopeModel step(double epsilon);

    /// f_axis(d) - 1, computed without cancellation for small d.
    double factor_minus_one(int axis, double d) const;
    double factor(int axis, double d) const {
        return 1 + factor_minus_one(axis, d);
    }
    /// f_axis''(0). Throws UnsupportedEnvelopeError for Step.
    double second_derivative_at_zero(int axis) const;
};

/// Amplitudes p(x₁_i, x₂_j) stored as amplitudes(i, j), normalised so Σ|p|² h² = 1.
class GridState {
   public:
    GridState(GridSpec spec, Eigen::MatrixXcd amplitudes, EnvelopeModel envelope);

    const GridSpec &spec() const {
        return spec_;
    }
    const Eigen::MatrixXcd &amplitudes() const {
        return amplitudes_;
    }
    const EnvelopeModel &envelope() const {
        return envelope_;
    }
    /// Σ |p|² h².
    double norm() const;

    GridState with_envelope(EnvelopeModel envelope) const;

   private:
    GridSpec spec_;
    Eigen::MatrixXcd amplitudes_;
    EnvelopeModel envelope_;
};

GridState grid_state_from_function(const GridSpec &spec,
                                   const std::function<std::complex<double>(double, double)> &amplitude,
                                   EnvelopeModel envelope = EnvelopeModel::unity());

/// Product Gaussian exp(-x₁²/(2w₁²) - x₂²/(2w₂²)); w = 1 is the vacuum.
GridState gaussian_grid_state(const GridSpec &spec, double w1, double w2,
                              EnvelopeModel envelope = EnvelopeModel::unity());

/// Position wavefunction of tms(g): exp(-u² e^{2g}/2 - v² e^{-2g}/2) with u = (x₁+x₂)/√2,
/// v = (x₁-x₂)/√2.
GridState tms_grid_state(const GridSpec &spec, double g, EnvelopeModel envelope = EnvelopeModel::unity());

/// Position wavefunction of a two-mode Fock vector evaluated on the grid.
GridState grid_state_from_fock(const GridSpec &spec, const FockVector &state,
                               EnvelopeModel envelope = EnvelopeModel::unity());

struct MomentumMoments {
    double p1;
    double p2;
    double p1_sq;
    double p2_sq;
    double p1p2;
    /// Largest |imaginary part| discarded while forming the moments.
    double imag_residual;

    double variance_sum() const {
        return p1_sq + p2_sq + 2 * p1p2 - (p1 + p2) * (p1 + p2);
    }
    double variance_difference() const {
        return p1_sq + p2_sq - 2 * p1p2 - (p1 - p2) * (p1 - p2);
    }
};

struct PositionMoments {
    double x1;
    double x2;
    double x1_sq;
    double x2_sq;
    double x1x2;

    double variance_sum() const {
        return x1_sq + x2_sq + 2 * x1x2 - (x1 + x2) * (x1 + x2);
    }
    double variance_difference() const {
        return x1_sq + x2_sq - 2 * x1x2 - (x1 - x2) * (x1 - x2);
    }
};

/// Moments of |p|² on the grid (unchanged by any envelope since f(0) = 1).
PositionMoments position_moments(const GridState &state);

/// Momentum moments of the pure state (f ≡ 1) from |p̃|² on the FFT grid.
/// Throws NyquistError when π/h < 6 √max(<p₁²>, <p₂²>).
MomentumMoments momentum_moments_ideal(const GridState &state);

/// Decomposition path: ideal moments minus f''(0) on each axis; first moments and <p₁p₂> are
/// unchanged because f'(0) = 0. Throws UnsupportedEnvelopeError for the step envelope.
MomentumMoments momentum_moments_decomposition(const GridState &state);

/// Direct path: K(d) = A(d) f(d) evaluated off-grid (A by exact Fourier sum, f analytically) and
/// differentiated at d = 0 with fourth-order central stencils of step `delta`. Requires
/// 2·delta < ε for the step envelope.
MomentumMoments momentum_moments_direct(const GridState &state, double delta = 1e-3);

struct DecoheredMoments {
    /// Empty for envelopes that are not twice differentiable at 0.
    std::optional<MomentumMoments> decomposition;
    MomentumMoments direct;
};

DecoheredMoments momentum_moments_decohered(const GridState &state);

/// V(x₁ + x₂) + V(p₁ - p₂) of the decohered state via the direct path. This is the squeezed
/// conjugate pair for tms(g) in this library's sign convention.
double grid_duan_simon_value(const GridState &state);

/// 1/√v_minus: certified lower bound on min(γ₁, γ₂) under a Gaussian envelope.
double certified_coherence_width(double v_minus_observed);

/// Smallest eigenvalue of h_s² F on the subgrid taking every `stride`-th point per axis, with
/// F(x, x̄) = p(x) p*(x̄) f(x - x̄). Nonnegative (to rounding) for a valid density kernel.
double kernel_min_eigenvalue(const GridState &state, size_t stride);

}  // namespace macrocat

#endif
