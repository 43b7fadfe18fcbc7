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

// Brute-force truncated Fock-space oracle. Everything here is computed from photon-number
// amplitudes and ladder-operator matrices, independently of the covariance-matrix code, so the
// two can check each other.

#ifndef MACROCAT_FOCK_ORACLE_H
#define MACROCAT_FOCK_ORACLE_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace macrocat {

/// Amplitudes of a one- or two-mode pure state on the basis {|n>} or {|n1, n2>}, n ≤ cutoff.
///
/// The two-mode amplitude of |n1, n2> sits at index n1 * (cutoff + 1) + n2.
/// States are built from their exact amplitude law and are not renormalised after truncation:
/// `norm()` falls short of 1 by the truncated tail, and `tail_bound()` reports an analytic upper
/// bound on that deficit.
class FockVector {
   public:
    FockVector(size_t n_modes, size_t cutoff, Eigen::VectorXcd amplitudes, double tail_bound = 0);

    size_t n_modes() const {
        return n_modes_;
    }
    size_t cutoff() const {
        return cutoff_;
    }
    size_t dim() const {
        return cutoff_ + 1;
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amplitudes_;
    }
    double tail_bound() const {
        return tail_bound_;
    }

    std::complex<double> amplitude(size_t n) const;
    std::complex<double> amplitude(size_t n1, size_t n2) const;

    /// Squared norm Σ |c|².
    double norm() const;
    /// 1 - norm().
    double norm_deficit() const;

    /// Copy scaled to unit norm. Never applied implicitly.
    FockVector renormalized() const;

    /// Two-mode amplitudes as a (cutoff+1) × (cutoff+1) matrix C(n1, n2).
    Eigen::MatrixXcd as_matrix() const;

   private:
    size_t n_modes_;
    size_t cutoff_;
    Eigen::VectorXcd amplitudes_;
    double tail_bound_;
};

/// S(g)|00> = sech g Σ_k (-tanh g)^k |k, k>, the same state as two_mode_squeezed_vacuum(g).
/// Throws TruncationError when the discarded norm exceeds `tail_tol`.
FockVector tms_fock(double g, size_t cutoff, double tail_tol = 1e-10);

/// Cat state (|α> + sign |-α>) / norm on one mode, sign = +1 (even) or -1 (odd).
FockVector cat_state(std::complex<double> alpha, int relative_sign, size_t cutoff, double tail_tol = 1e-10);

/// Single-mode number state |n>.
FockVector number_state(size_t n, size_t cutoff);

/// |a> ⊗ |b> for two single-mode vectors with equal cutoffs.
FockVector product_state(const FockVector &a, const FockVector &b);

/// Truncated single- or two-mode operator stored as a sum of local single-mode matrices,
/// O = Σ_k O_k acting on mode_k. Two-mode operators are applied to the amplitude matrix directly
/// (O_1 C and C O_2ᵀ) so the (cutoff+1)²-dimensional Kronecker product is never formed unless
/// `dense()` is called.
class FockOperator {
   public:
    struct LocalTerm {
        size_t mode;
        Eigen::MatrixXcd matrix;
    };

    FockOperator(size_t n_modes, size_t cutoff, std::vector<LocalTerm> terms, std::string label);

    size_t n_modes() const {
        return n_modes_;
    }
    size_t cutoff() const {
        return cutoff_;
    }
    const std::string &label() const {
        return label_;
    }
    const std::vector<LocalTerm> &terms() const {
        return terms_;
    }

    /// O|ψ>, truncated to the same basis.
    Eigen::VectorXcd apply(const FockVector &state) const;

    /// Full matrix on the (cutoff+1)^n_modes basis.
    Eigen::MatrixXcd dense() const;

    FockOperator operator+(const FockOperator &other) const;
    FockOperator scaled(double factor) const;

    /// Embeds a single-mode operator on `mode` of an `n_modes`-mode system.
    FockOperator on_mode(size_t mode, size_t n_modes) const;

   private:
    size_t n_modes_;
    size_t cutoff_;
    std::vector<LocalTerm> terms_;
    std::string label_;
};

FockOperator annihilation(size_t cutoff);
FockOperator creation(size_t cutoff);
FockOperator number_operator(size_t cutoff);
/// X^θ = (a e^{iθ} + a† e^{-iθ}) / √2.
FockOperator quadrature_operator(size_t cutoff, double theta);

/// Σ_i w_i X_i^{θ_i} on a two-mode system (mode index = position in `angles`).
FockOperator local_quadrature_sum(size_t cutoff, std::span<const double> angles, std::span<const double> weights);

/// <ψ|O|ψ> (real part; callers pass Hermitian operators).
double pure_state_mean(const FockVector &state, const FockOperator &obs);

/// <O²> - <O>² computed as ‖Oψ‖² - <ψ|O|ψ>².
double pure_state_variance(const FockVector &state, const FockOperator &obs);

/// Quantum Fisher information of a pure state: 4 × variance.
double pure_state_qfi(const FockVector &state, const FockOperator &obs);

/// φ_0(x) … φ_nmax(x), eigenfunctions of n̂ in the x = X^0 representation. Uses the upward
/// three-term recurrence with a running log scale so large n and |x| neither overflow nor
/// underflow prematurely.
Eigen::VectorXd hermite_functions(double x, size_t n_max);

/// ψ(x_1, x_2) = <x_1, x_2|ψ> on the tensor grid grid × grid.
/// Throws std::invalid_argument if the grid spacing cannot resolve the highest Fock component
/// (π / h < √(2 cutoff + 1)).
Eigen::MatrixXcd joint_x_amplitude(const FockVector &state, std::span<const double> grid);

/// |ψ(x_1, x_2)|² on the tensor grid.
Eigen::MatrixXd joint_x_distribution(const FockVector &state, std::span<const double> grid);

/// |ψ(x)|² for a single-mode state.
Eigen::VectorXd x_distribution(const FockVector &state, std::span<const double> grid);

}  // namespace macrocat

#endif
