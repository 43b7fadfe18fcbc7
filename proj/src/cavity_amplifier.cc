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

#include "macrocat/cavity_amplifier.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "macrocat/numerics.h"

namespace macrocat {

namespace {

using cd = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// expm1(z) / z, continuous at 0.
double phi(double z) {
    if (std::abs(z) < 1e-5) {
        return 1 + z / 2 + z * z / 6 + z * z * z / 24;
    }
    return std::expm1(z) / z;
}

// ∫_0^t e^{2δs} ds and ∫_0^t e^{-2σs} ds.
struct Integrals {
    double a;
    double b;
};

Integrals integrals(const CavityParams &p) {
    double delta = p.chi - p.lambda_;
    double sigma = p.chi + p.lambda_;
    double z = 2 * delta * p.t;
    double a = std::abs(delta) < 1e-6 * p.chi ? p.t * (1 + z / 2 + z * z / 6 + z * z * z / 24) : p.t * phi(z);
    return {a, p.t * phi(-2 * sigma * p.t)};
}

using State = std::array<double, 5>;

State rhs(const State &s, double chi, double lambda) {
    cd eta(s[0], s[1]);
    cd mu(s[2], s[3]);
    cd deta = chi * std::conj(mu) - lambda * eta;
    cd dmu = chi * std::conj(eta) - lambda * mu;
    return {deta.real(), deta.imag(), dmu.real(), dmu.imag(), -2 * chi * (eta * mu).real()};
}

}  // namespace

void validate(const CavityParams &p) {
    if (!(p.chi > 0) || !std::isfinite(p.chi)) {
        throw std::invalid_argument("cavity: chi must be positive and finite");
    }
    if (!(p.lambda_ >= 0) || !std::isfinite(p.lambda_)) {
        throw std::invalid_argument("cavity: lambda must be nonnegative and finite");
    }
    if (!(p.t >= 0) || !std::isfinite(p.t)) {
        throw std::invalid_argument("cavity: t must be nonnegative and finite");
    }
}

DeltaVariances delta_variances(const CavityParams &params) {
    validate(params);
    Integrals in = integrals(params);
    return {0.5 - params.chi * in.b, 0.5 + params.chi * in.a};
}

Scalars propagate_scalars(cd eta0, cd mu0, double kappa0, const CavityParams &params) {
    validate(params);
    double decay = std::exp(-params.lambda_ * params.t);
    double c = std::cosh(params.chi * params.t);
    double s = std::sinh(params.chi * params.t);
    cd eta = decay * (c * eta0 + s * std::conj(mu0));
    cd mu = decay * (s * std::conj(eta0) + c * mu0);
    Integrals in = integrals(params);
    double r = (eta0 * mu0).real();
    double n = std::norm(eta0) + std::norm(mu0);
    double kappa = kappa0 - 2 * params.chi * (r * (in.a + in.b) / 2 + n * (in.a - in.b) / 4);
    return {eta, mu, kappa};
}

Scalars ode_integrate(cd eta0, cd mu0, double kappa0, const CavityParams &params, double step) {
    validate(params);
    double limit = 0.01 / std::max(params.chi, params.lambda_);
    if (!(step > 0) || step > limit) {
        throw PreconditionError("ode_integrate: step must be positive and at most 0.01 / max(chi, lambda)");
    }
    State y{eta0.real(), eta0.imag(), mu0.real(), mu0.imag(), kappa0};
    if (params.t == 0) {
        return {eta0, mu0, kappa0};
    }
    auto n = static_cast<long>(std::ceil(params.t / step));
    double h = params.t / static_cast<double>(n);
    auto axpy = [](const State &a, double f, const State &b) {
        State r;
        for (size_t i = 0; i < r.size(); i++) {
            r[i] = a[i] + f * b[i];
        }
        return r;
    };
    for (long k = 0; k < n; k++) {
        State k1 = rhs(y, params.chi, params.lambda_);
        State k2 = rhs(axpy(y, h / 2, k1), params.chi, params.lambda_);
        State k3 = rhs(axpy(y, h / 2, k2), params.chi, params.lambda_);
        State k4 = rhs(axpy(y, h, k3), params.chi, params.lambda_);
        for (size_t i = 0; i < y.size(); i++) {
            y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        }
    }
    return {cd(y[0], y[1]), cd(y[2], y[3]), y[4]};
}

DeltaVariances delta_variances_ode(const CavityParams &params, double step) {
    // κ(t) from (η₀, μ₀) = (1, -1) is 2χ∫e^{-2σs}ds; from (1, 1) it is -2χ∫e^{2δs}ds.
    Scalars minus = ode_integrate(1.0, -1.0, 0.0, params, step);
    Scalars plus = ode_integrate(1.0, 1.0, 0.0, params, step);
    return {0.5 - minus.kappa / 2, 0.5 - plus.kappa / 2};
}

double JointQuadratureDistribution::density(double x, double y) const {
    Eigen::Vector2d d(x - mean(0), y - mean(1));
    double det = cov.determinant();
    double q = d.dot(cov.inverse() * d);
    return std::exp(-0.5 * q) / (2 * kPi * std::sqrt(det));
}

JointQuadratureDistribution joint_distribution(const CavityParams &params) {
    validate(params);
    double decay = std::exp(-params.lambda_ * params.t);
    double c = std::cosh(params.chi * params.t);
    double s = std::sinh(params.chi * params.t);
    cd ea(std::cos(params.theta), std::sin(params.theta));
    cd eb(std::cos(params.xi), std::sin(params.xi));
    // <a(t)> = e^{-λt}(C α + S β*), <b(t)> = e^{-λt}(C β + S α*); <X^θ> = √2 Re(<a> e^{iθ}).
    cd a_t = decay * (c * params.seed_alpha + s * std::conj(params.seed_beta));
    cd b_t = decay * (c * params.seed_beta + s * std::conj(params.seed_alpha));
    JointQuadratureDistribution out;
    out.mean = {std::sqrt(2.0) * (a_t * ea).real(), std::sqrt(2.0) * (b_t * eb).real()};
    Integrals in = integrals(params);
    double diag = 0.5 + params.chi * (in.a - in.b) / 2;
    double off = params.chi * (in.a + in.b) / 2 * std::cos(params.theta + params.xi);
    out.cov << diag, off, off, diag;
    out.delta_minus = diag - std::abs(off);
    out.delta_plus = diag + std::abs(off);
    double r = 1 / std::sqrt(2.0);
    // Off-diagonal ≥ 0 squeezes (x - y)/√2, otherwise (x + y)/√2.
    if (off >= 0) {
        out.axes << r, r, -r, r;
    } else {
        out.axes << r, r, r, -r;
    }
    return out;
}

double joint_probability(const CavityParams &params, double x, double y) {
    return joint_distribution(params).density(x, y);
}

std::string_view to_string(ThresholdClass c) {
    switch (c) {
        case ThresholdClass::Below:
            return "below";
        case ThresholdClass::At:
            return "at";
        case ThresholdClass::Above:
            return "above";
    }
    return "unknown";
}

ThresholdReport threshold_report(double chi, double lambda_) {
    validate(CavityParams{chi, lambda_, 0.0});
    ThresholdReport r{};
    r.delta_minus_inf = lambda_ / (2 * (lambda_ + chi));
    r.n_eff_floor = lambda_ == 0 ? kInf : 1 + chi / lambda_;
    if (std::abs(lambda_ - chi) <= 1e-12 * chi) {
        r.classification = ThresholdClass::At;
        r.delta_plus_inf = kInf;
        r.plus_growth_rate = 0;
    } else if (lambda_ > chi) {
        r.classification = ThresholdClass::Below;
        r.delta_plus_inf = lambda_ / (2 * (lambda_ - chi));
        r.plus_growth_rate = 0;
    } else {
        r.classification = ThresholdClass::Above;
        r.delta_plus_inf = kInf;
        r.plus_growth_rate = 2 * (chi - lambda_);
    }
    return r;
}

}  // namespace macrocat
