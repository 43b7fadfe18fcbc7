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

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "macrocat/macroscopicity.h"
#include "macrocat/numerics.h"

namespace macrocat {

namespace {

using cd = std::complex<double>;

// Normalised momentum weights |p̃(k)|² / Σ|p̃|² and the angular frequencies of each FFT bin.
struct Spectrum {
    Eigen::MatrixXd weights;
    Eigen::VectorXd k;
};

Spectrum spectrum(const GridState &state) {
    const size_t m = state.spec().points;
    Eigen::MatrixXcd in = state.amplitudes();
    Eigen::MatrixXcd out(in.rows(), in.cols());
    auto n = static_cast<int>(m);
    // Column-major storage is the transposed row-major layout; a 2-D DFT is indifferent to that.
    fftw_plan plan = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex *>(in.data()),
                                      reinterpret_cast<fftw_complex *>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    Spectrum s;
    s.weights = out.cwiseAbs2();
    s.weights /= s.weights.sum();
    s.k.resize(n);
    double dk = 2 * kPi / (static_cast<double>(m) * state.spec().spacing());
    for (size_t j = 0; j < m; j++) {
        auto signed_j = static_cast<double>(j) - (j >= m / 2 ? static_cast<double>(m) : 0.0);
        s.k(static_cast<Eigen::Index>(j)) = signed_j * dk;
    }
    return s;
}

void check_nyquist(const GridState &state, double p1_sq, double p2_sq) {
    double nyquist = kPi / state.spec().spacing();
    double scale = std::sqrt(std::max(p1_sq, p2_sq));
    if (nyquist < 6 * scale) {
        throw NyquistError("grid spacing too coarse: Nyquist momentum " + std::to_string(nyquist) +
                           " is below 6 x momentum scale " + std::to_string(scale));
    }
}

MomentumMoments ideal_from(const Spectrum &s) {
    MomentumMoments mm{};
    const auto m = s.k.size();
    for (Eigen::Index j = 0; j < m; j++) {
        for (Eigen::Index i = 0; i < m; i++) {
            double w = s.weights(i, j);
            double k1 = s.k(i);
            double k2 = s.k(j);
            mm.p1 += w * k1;
            mm.p2 += w * k2;
            mm.p1_sq += w * k1 * k1;
            mm.p2_sq += w * k2 * k2;
            mm.p1p2 += w * k1 * k2;
        }
    }
    return mm;
}

// A(d) - 1 from the spectral weights, using e^{iφ} - 1 = -2 sin²(φ/2) + i sin φ.
cd autocorrelation_minus_one(const Spectrum &s, double d1, double d2) {
    double re = 0;
    double im = 0;
    const auto m = s.k.size();
    for (Eigen::Index j = 0; j < m; j++) {
        double phase2 = s.k(j) * d2;
        for (Eigen::Index i = 0; i < m; i++) {
            double phase = s.k(i) * d1 + phase2;
            double half = std::sin(phase / 2);
            re -= 2 * s.weights(i, j) * half * half;
            im += s.weights(i, j) * std::sin(phase);
        }
    }
    return {re, im};
}

// K(d) - 1 with K = A f.
cd kernel_minus_one(const Spectrum &s, const EnvelopeModel &env, double d1, double d2) {
    cd a1 = autocorrelation_minus_one(s, d1, d2);
    double g1 = env.factor_minus_one(0, d1);
    double g2 = env.factor_minus_one(1, d2);
    double f1 = g1 * g2 + g1 + g2;
    return a1 * (1 + f1) + f1;
}

constexpr std::array<double, 5> kFirst{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr std::array<double, 5> kSecond{-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};

}  // namespace

GridSpec::GridSpec(double half_range_, size_t points_) : half_range(half_range_), points(points_) {
    if (!(half_range > 0) || !std::isfinite(half_range)) {
        throw std::invalid_argument("GridSpec: half range must be positive");
    }
    if (points < 8 || (points & (points - 1)) != 0) {
        throw std::invalid_argument("GridSpec: points must be a power of two and at least 8");
    }
}

std::vector<double> GridSpec::coordinates() const {
    std::vector<double> xs(points);
    for (size_t i = 0; i < points; i++) {
        xs[i] = coordinate(i);
    }
    return xs;
}

EnvelopeModel EnvelopeModel::unity() {
    return {};
}

EnvelopeModel EnvelopeModel::gaussian(double gamma1, double gamma2) {
    if (!(gamma1 > 0 && gamma2 > 0)) {
        throw std::invalid_argument("gaussian envelope: widths must be positive");
    }
    EnvelopeModel e;
    e.kind = Kind::Gaussian;
    e.gamma1 = gamma1;
    e.gamma2 = gamma2;
    return e;
}

EnvelopeModel EnvelopeModel::step(double epsilon) {
    if (!(epsilon > 0)) {
        throw std::invalid_argument("step envelope: half-width must be positive");
    }
    EnvelopeModel e;
    e.kind = Kind::Step;
    e.epsilon = epsilon;
    return e;
}

double EnvelopeModel::factor_minus_one(int axis, double d) const {
    switch (kind) {
        case Kind::Unity:
            return 0;
        case Kind::Gaussian: {
            double gamma = axis == 0 ? gamma1 : gamma2;
            return std::expm1(-d * d / (2 * gamma * gamma));
        }
        case Kind::Step:
            return std::abs(d) < epsilon ? 0.0 : -1.0;
    }
    return 0;
}

double EnvelopeModel::second_derivative_at_zero(int axis) const {
    switch (kind) {
        case Kind::Unity:
            return 0;
        case Kind::Gaussian: {
            double gamma = axis == 0 ? gamma1 : gamma2;
            return -1 / (gamma * gamma);
        }
        case Kind::Step:
            break;
    }
    throw UnsupportedEnvelopeError("step envelope is not twice differentiable; use the direct path");
}

GridState::GridState(GridSpec spec, Eigen::MatrixXcd amplitudes, EnvelopeModel envelope)
    : spec_(spec), amplitudes_(std::move(amplitudes)), envelope_(envelope) {
    auto m = static_cast<Eigen::Index>(spec_.points);
    if (amplitudes_.rows() != m || amplitudes_.cols() != m) {
        throw std::invalid_argument("GridState: amplitude array must be points x points");
    }
    if (!amplitudes_.allFinite()) {
        throw std::invalid_argument("GridState: amplitudes must be finite");
    }
    double h = spec_.spacing();
    double n = amplitudes_.squaredNorm() * h * h;
    if (!(n > 0)) {
        throw std::invalid_argument("GridState: amplitudes vanish on the grid");
    }
    amplitudes_ /= std::sqrt(n);
}

double GridState::norm() const {
    double h = spec_.spacing();
    return amplitudes_.squaredNorm() * h * h;
}

GridState GridState::with_envelope(EnvelopeModel envelope) const {
    return GridState(spec_, amplitudes_, envelope);
}

GridState grid_state_from_function(const GridSpec &spec, const std::function<cd(double, double)> &amplitude,
                                   EnvelopeModel envelope) {
    auto m = static_cast<Eigen::Index>(spec.points);
    Eigen::MatrixXcd p(m, m);
    for (Eigen::Index j = 0; j < m; j++) {
        for (Eigen::Index i = 0; i < m; i++) {
            p(i, j) = amplitude(spec.coordinate(static_cast<size_t>(i)), spec.coordinate(static_cast<size_t>(j)));
        }
    }
    return GridState(spec, std::move(p), envelope);
}

GridState gaussian_grid_state(const GridSpec &spec, double w1, double w2, EnvelopeModel envelope) {
    if (!(w1 > 0 && w2 > 0)) {
        throw std::invalid_argument("gaussian_grid_state: widths must be positive");
    }
    return grid_state_from_function(
        spec, [=](double x1, double x2) { return cd(std::exp(-x1 * x1 / (2 * w1 * w1) - x2 * x2 / (2 * w2 * w2))); },
        envelope);
}

GridState tms_grid_state(const GridSpec &spec, double g, EnvelopeModel envelope) {
    double squeeze = std::exp(2 * g);
    return grid_state_from_function(
        spec,
        [=](double x1, double x2) {
            double u = (x1 + x2) / std::sqrt(2.0);
            double v = (x1 - x2) / std::sqrt(2.0);
            return cd(std::exp(-u * u * squeeze / 2 - v * v / (2 * squeeze)));
        },
        envelope);
}

GridState grid_state_from_fock(const GridSpec &spec, const FockVector &state, EnvelopeModel envelope) {
    if (state.n_modes() != 2) {
        throw std::invalid_argument("grid_state_from_fock: state must have two modes");
    }
    std::vector<double> xs = spec.coordinates();
    return GridState(spec, joint_x_amplitude(state, xs), envelope);
}

PositionMoments position_moments(const GridState &state) {
    PositionMoments pm{};
    double h = state.spec().spacing();
    auto m = static_cast<Eigen::Index>(state.spec().points);
    for (Eigen::Index j = 0; j < m; j++) {
        double x2 = state.spec().coordinate(static_cast<size_t>(j));
        for (Eigen::Index i = 0; i < m; i++) {
            double x1 = state.spec().coordinate(static_cast<size_t>(i));
            double w = std::norm(state.amplitudes()(i, j)) * h * h;
            pm.x1 += w * x1;
            pm.x2 += w * x2;
            pm.x1_sq += w * x1 * x1;
            pm.x2_sq += w * x2 * x2;
            pm.x1x2 += w * x1 * x2;
        }
    }
    return pm;
}

MomentumMoments momentum_moments_ideal(const GridState &state) {
    Spectrum s = spectrum(state);
    MomentumMoments mm = ideal_from(s);
    check_nyquist(state, mm.p1_sq, mm.p2_sq);
    return mm;
}

MomentumMoments momentum_moments_decomposition(const GridState &state) {
    const EnvelopeModel &env = state.envelope();
    double f1 = env.second_derivative_at_zero(0);
    double f2 = env.second_derivative_at_zero(1);
    MomentumMoments mm = momentum_moments_ideal(state);
    mm.p1_sq -= f1;
    mm.p2_sq -= f2;
    return mm;
}

MomentumMoments momentum_moments_direct(const GridState &state, double delta) {
    const EnvelopeModel &env = state.envelope();
    if (!(delta > 0)) {
        throw std::invalid_argument("momentum_moments_direct: stencil step must be positive");
    }
    if (env.kind == EnvelopeModel::Kind::Step && !(2 * delta < env.epsilon)) {
        throw std::invalid_argument("momentum_moments_direct: stencil must fit inside the step envelope");
    }
    Spectrum s = spectrum(state);
    MomentumMoments ideal = ideal_from(s);
    check_nyquist(state, ideal.p1_sq, ideal.p2_sq);

    std::array<cd, 5> axis1;
    std::array<cd, 5> axis2;
    for (int i = 0; i < 5; i++) {
        double d = (i - 2) * delta;
        axis1[static_cast<size_t>(i)] = kernel_minus_one(s, env, d, 0);
        axis2[static_cast<size_t>(i)] = kernel_minus_one(s, env, 0, d);
    }
    cd d1{0};
    cd d2{0};
    cd d11{0};
    cd d22{0};
    for (size_t i = 0; i < 5; i++) {
        d1 += kFirst[i] * axis1[i];
        d2 += kFirst[i] * axis2[i];
        d11 += kSecond[i] * axis1[i];
        d22 += kSecond[i] * axis2[i];
    }
    cd d12{0};
    for (size_t i = 0; i < 5; i++) {
        for (size_t j = 0; j < 5; j++) {
            double c = kFirst[i] * kFirst[j];
            if (c == 0) {
                continue;
            }
            double a = (static_cast<double>(i) - 2) * delta;
            double b = (static_cast<double>(j) - 2) * delta;
            d12 += c * kernel_minus_one(s, env, a, b);
        }
    }
    d1 /= delta;
    d2 /= delta;
    d11 /= delta * delta;
    d22 /= delta * delta;
    d12 /= delta * delta;

    // <p> = -i ∂K(0), <p_a p_b> = -∂_a ∂_b K(0).
    MomentumMoments mm{};
    mm.p1 = d1.imag();
    mm.p2 = d2.imag();
    mm.p1_sq = -d11.real();
    mm.p2_sq = -d22.real();
    mm.p1p2 = -d12.real();
    mm.imag_residual = std::max({std::abs(d1.real()), std::abs(d2.real()), std::abs(d11.imag()),
                                 std::abs(d22.imag()), std::abs(d12.imag())});
    return mm;
}

DecoheredMoments momentum_moments_decohered(const GridState &state) {
    DecoheredMoments out{std::nullopt, momentum_moments_direct(state)};
    if (state.envelope().kind != EnvelopeModel::Kind::Step) {
        out.decomposition = momentum_moments_decomposition(state);
    }
    return out;
}

double grid_duan_simon_value(const GridState &state) {
    return position_moments(state).variance_sum() + momentum_moments_direct(state).variance_difference();
}

double certified_coherence_width(double v_minus_observed) {
    return coherence_range(v_minus_observed);
}

double kernel_min_eigenvalue(const GridState &state, size_t stride) {
    if (stride == 0) {
        throw std::invalid_argument("kernel_min_eigenvalue: stride must be positive");
    }
    const size_t m = state.spec().points;
    size_t per_axis = (m + stride - 1) / stride;
    size_t n = per_axis * per_axis;
    if (n > 4096) {
        throw std::invalid_argument("kernel_min_eigenvalue: subgrid too large; increase the stride");
    }
    std::vector<std::array<size_t, 2>> idx;
    idx.reserve(n);
    for (size_t j = 0; j < m; j += stride) {
        for (size_t i = 0; i < m; i += stride) {
            idx.push_back({i, j});
        }
    }
    double hs = state.spec().spacing() * static_cast<double>(stride);
    const EnvelopeModel &env = state.envelope();
    const auto &p = state.amplitudes();
    auto dim = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd kernel(dim, dim);
    for (Eigen::Index b = 0; b < dim; b++) {
        const auto &xb = idx[static_cast<size_t>(b)];
        for (Eigen::Index a = 0; a < dim; a++) {
            const auto &xa = idx[static_cast<size_t>(a)];
            double d1 = state.spec().coordinate(xa[0]) - state.spec().coordinate(xb[0]);
            double d2 = state.spec().coordinate(xa[1]) - state.spec().coordinate(xb[1]);
            double f = env.factor(0, d1) * env.factor(1, d2);
            auto pa = p(static_cast<Eigen::Index>(xa[0]), static_cast<Eigen::Index>(xa[1]));
            auto pb = p(static_cast<Eigen::Index>(xb[0]), static_cast<Eigen::Index>(xb[1]));
            kernel(a, b) = pa * std::conj(pb) * f * hs * hs;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(kernel, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

}  // namespace macrocat
