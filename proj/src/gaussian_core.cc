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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "macrocat/numerics.h"

namespace macrocat {

namespace {

Eigen::MatrixXd symplectic_form(size_t n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (size_t k = 0; k < n_modes; k++) {
        omega(2 * k, 2 * k + 1) = 1;
        omega(2 * k + 1, 2 * k) = -1;
    }
    return omega;
}

// Direction in phase space of X^θ = x cos θ - p sin θ.
Eigen::Vector2d quadrature_direction(double theta) {
    return {std::cos(theta), -std::sin(theta)};
}

void check_mode(const GaussianState &state, size_t mode) {
    if (mode >= state.n_modes()) {
        throw std::out_of_range(
            "mode index " + std::to_string(mode) + " out of range for a " + std::to_string(state.n_modes()) +
            "-mode state");
    }
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov) : mean_(std::move(mean)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
        throw std::invalid_argument("GaussianState: mean must have positive even length 2n");
    }
    if (cov.rows() != mean_.size() || cov.cols() != mean_.size()) {
        throw std::invalid_argument("GaussianState: covariance must be 2n x 2n");
    }
    if (!mean_.allFinite() || !cov.allFinite()) {
        throw std::invalid_argument("GaussianState: moments must be finite");
    }
    cov_ = 0.5 * (cov + cov.transpose());
}

std::vector<double> GaussianState::symplectic_eigenvalues() const {
    size_t n = n_modes();
    Eigen::MatrixXd m = symplectic_form(n) * cov_;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    std::vector<double> magnitudes;
    magnitudes.reserve(2 * n);
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); k++) {
        magnitudes.push_back(std::abs(solver.eigenvalues()[k]));
    }
    std::sort(magnitudes.begin(), magnitudes.end());
    std::vector<double> result;
    result.reserve(n);
    for (size_t k = 0; k < n; k++) {
        // Eigenvalues come in ± i ν pairs.
        result.push_back(0.5 * (magnitudes[2 * k] + magnitudes[2 * k + 1]));
    }
    return result;
}

bool GaussianState::is_physical(double tol) const {
    for (double nu : symplectic_eigenvalues()) {
        if (nu < 0.5 - tol) {
            return false;
        }
    }
    return true;
}

bool GaussianState::is_pure(double tol) const {
    for (double nu : symplectic_eigenvalues()) {
        if (std::abs(nu - 0.5) > tol) {
            return false;
        }
    }
    return true;
}

QuadratureObservable::QuadratureObservable(std::vector<QuadratureTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw std::invalid_argument("QuadratureObservable: at least one term required");
    }
    for (auto &t : terms_) {
        if (!std::isfinite(t.weight) || t.weight == 0) {
            throw std::invalid_argument("QuadratureObservable: weights must be finite and nonzero");
        }
        if (!std::isfinite(t.angle)) {
            throw std::invalid_argument("QuadratureObservable: angles must be finite");
        }
        t.angle = wrap_angle(t.angle);
    }
}

Eigen::VectorXd QuadratureObservable::phase_space_vector(size_t n_modes) const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(2 * n_modes);
    for (const auto &t : terms_) {
        if (t.mode >= n_modes) {
            throw std::out_of_range(
                "observable acts on mode " + std::to_string(t.mode) + " of a " + std::to_string(n_modes) +
                "-mode state");
        }
        w.segment<2>(2 * t.mode) += t.weight * quadrature_direction(t.angle);
    }
    return w;
}

QuadratureObservable QuadratureObservable::local_sum(std::span<const double> angles) {
    std::vector<QuadratureTerm> terms;
    for (size_t k = 0; k < angles.size(); k++) {
        terms.push_back({k, angles[k], 1.0});
    }
    return QuadratureObservable(std::move(terms));
}

GaussianState vacuum(size_t n_modes) {
    if (n_modes == 0) {
        throw std::invalid_argument("vacuum: n_modes must be at least 1");
    }
    return GaussianState(Eigen::VectorXd::Zero(2 * n_modes), 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState coherent(std::span<const std::complex<double>> alphas) {
    GaussianState vac = vacuum(alphas.size());
    Eigen::VectorXd mean(2 * alphas.size());
    for (size_t k = 0; k < alphas.size(); k++) {
        mean(2 * k) = std::sqrt(2.0) * alphas[k].real();
        mean(2 * k + 1) = std::sqrt(2.0) * alphas[k].imag();
    }
    return GaussianState(mean, vac.cov());
}

GaussianState thermal(double n_bar) {
    if (!(n_bar >= 0) || !std::isfinite(n_bar)) {
        throw std::invalid_argument("thermal: occupation must be finite and nonnegative");
    }
    return GaussianState(Eigen::VectorXd::Zero(2), (n_bar + 0.5) * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState squeezed_vacuum(double r, double angle) {
    if (!std::isfinite(r) || !std::isfinite(angle)) {
        throw std::invalid_argument("squeezed_vacuum: parameters must be finite");
    }
    Eigen::Vector2d squeezed = quadrature_direction(angle);
    Eigen::Vector2d anti = quadrature_direction(angle + kPi / 2);
    Eigen::Matrix2d cov = 0.5 * std::exp(-2 * r) * squeezed * squeezed.transpose() +
                          0.5 * std::exp(2 * r) * anti * anti.transpose();
    return GaussianState(Eigen::VectorXd::Zero(2), cov);
}

GaussianState tensor_product(const GaussianState &a, const GaussianState &b) {
    Eigen::Index na = a.mean().size();
    Eigen::Index nb = b.mean().size();
    Eigen::VectorXd mean(na + nb);
    mean << a.mean(), b.mean();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov();
    cov.bottomRightCorner(nb, nb) = b.cov();
    return GaussianState(mean, cov);
}

GaussianState two_mode_squeezed_vacuum(double g) {
    if (!std::isfinite(g)) {
        throw std::invalid_argument("two_mode_squeezed_vacuum: g must be finite");
    }
    double c = 0.5 * std::cosh(2 * g);
    double s = 0.5 * std::sinh(2 * g);
    Eigen::MatrixXd cov(4, 4);
    // clang-format off
    cov <<  c,  0, -s,  0,
            0,  c,  0,  s,
           -s,  0,  c,  0,
            0,  s,  0,  c;
    // clang-format on
    return GaussianState(Eigen::VectorXd::Zero(4), cov);
}

double quadrature_variance(const GaussianState &state, const QuadratureObservable &obs) {
    Eigen::VectorXd w = obs.phase_space_vector(state.n_modes());
    return w.dot(state.cov() * w);
}

double quadrature_mean(const GaussianState &state, const QuadratureObservable &obs) {
    return obs.phase_space_vector(state.n_modes()).dot(state.mean());
}

double duan_simon_value(
    const GaussianState &state, double a, double phi, double phi_prime, double Phi, double Phi_prime) {
    if (a == 0 || !std::isfinite(a)) {
        throw std::invalid_argument("duan_simon_value: a must be finite and nonzero");
    }
    if (state.n_modes() != 2) {
        throw std::invalid_argument("duan_simon_value: requires a two-mode state");
    }
    QuadratureObservable plus({{0, phi, std::abs(a)}, {1, Phi, 1 / a}});
    QuadratureObservable minus({{0, phi_prime, std::abs(a)}, {1, Phi_prime, -1 / a}});
    return quadrature_variance(state, plus) + quadrature_variance(state, minus);
}

GaussianState apply_loss(const GaussianState &state, std::span<const double> transmissions) {
    size_t n = state.n_modes();
    if (transmissions.size() != n) {
        throw std::invalid_argument("apply_loss: need one transmission per mode");
    }
    Eigen::VectorXd k(2 * n);
    for (size_t m = 0; m < n; m++) {
        double eta = transmissions[m];
        if (!(eta >= 0 && eta <= 1)) {
            throw std::invalid_argument("apply_loss: transmission must lie in [0, 1]");
        }
        k(2 * m) = k(2 * m + 1) = std::sqrt(eta);
    }
    Eigen::VectorXd mean = k.cwiseProduct(state.mean());
    Eigen::MatrixXd cov = k.asDiagonal() * state.cov() * k.asDiagonal();
    for (Eigen::Index i = 0; i < cov.rows(); i++) {
        cov(i, i) += 0.5 * (1 - k(i) * k(i));
    }
    return GaussianState(mean, cov);
}

GaussianState apply_quadrature_noise(const GaussianState &state, size_t mode, double theta, double variance) {
    check_mode(state, mode);
    if (!(variance >= 0) || !std::isfinite(variance)) {
        throw std::invalid_argument("apply_quadrature_noise: variance must be finite and nonnegative");
    }
    Eigen::Vector2d shifted = quadrature_direction(theta + kPi / 2);
    Eigen::MatrixXd cov = state.cov();
    cov.block<2, 2>(2 * mode, 2 * mode) += variance * shifted * shifted.transpose();
    return GaussianState(state.mean(), cov);
}

namespace {

struct Marginal {
    Eigen::VectorXd mean;
    Eigen::MatrixXd factor;  // factor * factorᵀ = marginal covariance
};

Marginal quadrature_marginal(const GaussianState &state, std::span<const double> angles) {
    size_t n = state.n_modes();
    if (angles.size() != n) {
        throw std::invalid_argument("sample_quadratures: need one angle per mode");
    }
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(2 * n, n);
    for (size_t m = 0; m < n; m++) {
        u.block<2, 1>(2 * m, m) = quadrature_direction(angles[m]);
    }
    Eigen::MatrixXd sigma = u.transpose() * state.cov() * u;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
    Eigen::VectorXd vals = eig.eigenvalues();
    double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < vals.size(); k++) {
        if (vals(k) < -1e-12 * scale) {
            throw std::invalid_argument("sample_quadratures: marginal covariance is not positive semidefinite");
        }
        vals(k) = std::sqrt(std::max(vals(k), 0.0));
    }
    return {u.transpose() * state.mean(), eig.eigenvectors() * vals.asDiagonal()};
}

Eigen::MatrixXd draw(const Marginal &marginal, size_t rows, uint64_t chunk_seed) {
    Rng rng(chunk_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Index n = marginal.mean.size();
    Eigen::MatrixXd z(rows, n);
    for (size_t r = 0; r < rows; r++) {
        for (Eigen::Index c = 0; c < n; c++) {
            z(r, c) = normal(rng);
        }
    }
    Eigen::MatrixXd out = z * marginal.factor.transpose();
    out.rowwise() += marginal.mean.transpose();
    return out;
}

}  // namespace

Eigen::MatrixXd sample_quadrature_chunk(
    const GaussianState &state, std::span<const double> angles, size_t rows, uint64_t seed, uint64_t chunk) {
    if (rows > kSampleChunk) {
        throw std::invalid_argument("sample_quadrature_chunk: chunk larger than kSampleChunk");
    }
    return draw(quadrature_marginal(state, angles), rows, derive_stream_seed(seed, chunk));
}

Eigen::MatrixXd sample_quadratures(
    const GaussianState &state, std::span<const double> angles, size_t count, uint64_t seed) {
    if (count == 0) {
        throw std::invalid_argument("sample_quadratures: count must be at least 1");
    }
    Marginal marginal = quadrature_marginal(state, angles);
    Eigen::MatrixXd out(count, static_cast<Eigen::Index>(state.n_modes()));
    uint64_t chunk = 0;
    for (size_t start = 0; start < count; start += kSampleChunk, chunk++) {
        size_t rows = std::min<size_t>(kSampleChunk, count - start);
        out.middleRows(start, rows) = draw(marginal, rows, derive_stream_seed(seed, chunk));
    }
    return out;
}

double mean_photon_number(const GaussianState &state) {
    double total = 0;
    for (size_t m = 0; m < state.n_modes(); m++) {
        double vx = state.cov()(2 * m, 2 * m);
        double vp = state.cov()(2 * m + 1, 2 * m + 1);
        double mx = state.mean()(2 * m);
        double mp = state.mean()(2 * m + 1);
        total += 0.5 * (vx + vp + mx * mx + mp * mp - 1);
    }
    return total;
}

double correlated_partner_angle(double theta) {
    return wrap_angle(theta + kPi);
}

QuadratureObservable correlated_difference(double phi1, double phi2) {
    return QuadratureObservable({{0, phi1, 1.0}, {1, correlated_partner_angle(phi2), -1.0}});
}

QuadratureObservable squeezed_position_combination() {
    return QuadratureObservable({{0, 0.0, 1.0}, {1, 0.0, 1.0}});
}

QuadratureObservable squeezed_momentum_combination() {
    return QuadratureObservable({{0, kPi / 2, 1.0}, {1, kPi / 2, -1.0}});
}

QuadratureObservable correlated_position_sum() {
    return QuadratureObservable({{0, 0.0, 1.0}, {1, 0.0, -1.0}});
}

double duan_simon_squeezed_pair(const GaussianState &state) {
    return duan_simon_value(state, 1.0, 0.0, kPi / 2, 0.0, kPi / 2);
}

}  // namespace macrocat
