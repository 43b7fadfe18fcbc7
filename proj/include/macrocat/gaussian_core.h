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

#ifndef MACROCAT_GAUSSIAN_CORE_H
#define MACROCAT_GAUSSIAN_CORE_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace macrocat {

// Conventions used throughout the library:
//
//  * hbar = 1 and X^θ = (a e^{iθ} + a† e^{-iθ}) / √2 = x cos θ - p sin θ, so X^0 = x and
//    X^{π/2} = -p. The vacuum has V(X^θ) = 1/2 for every θ.
//  * Phase-space vectors are interleaved per mode: (x_1, p_1, x_2, p_2, ...).
//  * The two-mode squeezed vacuum is S(g)|00> with S(g) = exp(g (a_1 a_2 - a_1† a_2†)).
//    For g > 0 this makes x_1, x_2 anti-correlated and p_1, p_2 correlated:
//    cov(x_1, x_2) = -sinh(2g)/2, cov(p_1, p_2) = +sinh(2g)/2. The quadrature X_2^{θ+π} = -X_2^θ
//    is therefore the correlated partner of X_1^θ; the helpers near the bottom of this header
//    build the standard combinations so callers never need to track the sign by hand.

/// An n-mode Gaussian state stored as first and second moments.
///
/// `cov` holds the symmetrised covariance cov_ij = <{Δr_i, Δr_j}>/2. The constructor
/// symmetrises its input; physicality is checked only on request (`is_physical`).
class GaussianState {
   public:
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    size_t n_modes() const {
        return static_cast<size_t>(mean_.size() / 2);
    }
    const Eigen::VectorXd &mean() const {
        return mean_;
    }
    const Eigen::MatrixXd &cov() const {
        return cov_;
    }

    /// Symplectic eigenvalues, ascending (one per mode).
    std::vector<double> symplectic_eigenvalues() const;

    /// True when every symplectic eigenvalue is >= 1/2 - tol.
    bool is_physical(double tol = 1e-9) const;

    /// True when every symplectic eigenvalue equals 1/2 within tol.
    bool is_pure(double tol = 1e-6) const;

   private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// One term w · X_mode^angle of a quadrature observable.
struct QuadratureTerm {
    size_t mode;
    double angle;
    double weight;
};

/// Linear combination Σ w_i X_{mode_i}^{θ_i}. Angles are reduced modulo 2π on construction.
class QuadratureObservable {
   public:
    explicit QuadratureObservable(std::vector<QuadratureTerm> terms);

    const std::vector<QuadratureTerm> &terms() const {
        return terms_;
    }

    /// Coefficient vector w such that the observable equals wᵀ r, r = (x_1, p_1, ...).
    Eigen::VectorXd phase_space_vector(size_t n_modes) const;

    /// Σ_i X_i^{θ_i} with unit weights.
    static QuadratureObservable local_sum(std::span<const double> angles);

   private:
    std::vector<QuadratureTerm> terms_;
};

GaussianState vacuum(size_t n_modes);

/// Coherent state with the given complex amplitude per mode (mean x = √2 Re α, p = √2 Im α).
GaussianState coherent(std::span<const std::complex<double>> alphas);

/// Single-mode thermal state with mean occupation `n_bar`.
GaussianState thermal(double n_bar);

/// Single-mode squeezed vacuum with squeezing `r` along the quadrature X^angle.
GaussianState squeezed_vacuum(double r, double angle);

/// Tensor product of two Gaussian states (modes of `a` first).
GaussianState tensor_product(const GaussianState &a, const GaussianState &b);

/// Two-mode squeezed vacuum S(g)|00>. See the convention block above.
GaussianState two_mode_squeezed_vacuum(double g);

/// wᵀ cov w for the observable's coefficient vector.
double quadrature_variance(const GaussianState &state, const QuadratureObservable &obs);

/// wᵀ mean.
double quadrature_mean(const GaussianState &state, const QuadratureObservable &obs);

/// V(|a| X_1^φ + X_2^Φ / a) + V(|a| X_1^φ' - X_2^Φ' / a) for a two-mode state.
/// Values below 2 with a = 1 and φ - φ' = Φ - Φ' = π/2 witness entanglement.
double duan_simon_value(
    const GaussianState &state, double a, double phi, double phi_prime, double Phi, double Phi_prime);

/// Pure-loss channel on every mode with the given transmissions.
GaussianState apply_loss(const GaussianState &state, std::span<const double> transmissions);

/// Random displacement channel ρ -> ∫ h(λ) e^{iλ X^θ} ρ e^{-iλ X^θ} dλ on one mode, with zero-mean h
/// of variance `variance`. e^{iλ X^θ} shifts X^{θ+π/2} by λ, so that quadrature's variance grows.
GaussianState apply_quadrature_noise(const GaussianState &state, size_t mode, double theta, double variance);

/// Draws `count` joint outcomes of X_i^{angles[i]} (one quadrature per mode) from the exact
/// Gaussian marginal. Row k is one shot. Deterministic for a given seed; internally the samples
/// are produced in chunks of kSampleChunk rows, chunk c seeded with derive_stream_seed(seed, c).
Eigen::MatrixXd sample_quadratures(
    const GaussianState &state, std::span<const double> angles, size_t count, uint64_t seed);

/// Same as sample_quadratures but only the rows of chunk `chunk` (size <= kSampleChunk).
Eigen::MatrixXd sample_quadrature_chunk(
    const GaussianState &state, std::span<const double> angles, size_t rows, uint64_t seed, uint64_t chunk);

double mean_photon_number(const GaussianState &state);

// Named two-mode combinations (see the convention block at the top of this file).

/// Angle of the mode-2 quadrature that is positively correlated with X_1^θ in the tms state.
double correlated_partner_angle(double theta);

/// X_1^φ - X_2^{ϕ+π}. For tms(g) its variance is cosh 2g - sinh 2g cos(φ + ϕ).
QuadratureObservable correlated_difference(double phi1, double phi2);

/// X_1^0 + X_2^0, squeezed for g > 0: V = e^{-2g}.
QuadratureObservable squeezed_position_combination();

/// X_1^{π/2} - X_2^{π/2}, the squeezed conjugate combination: V = e^{-2g}.
QuadratureObservable squeezed_momentum_combination();

/// X_1^0 - X_2^0, the maximally correlated sum: V = e^{2g}.
QuadratureObservable correlated_position_sum();

/// Duan–Simon value with a = 1 evaluated on the squeezed pair
/// V(X_1^0 + X_2^0) + V(X_1^{π/2} - X_2^{π/2}); equals 2 e^{-2g} on tms(g).
double duan_simon_squeezed_pair(const GaussianState &state);

}  // namespace macrocat

#endif
