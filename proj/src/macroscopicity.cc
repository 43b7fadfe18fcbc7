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

#include "macrocat/macroscopicity.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "macrocat/numerics.h"

namespace macrocat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Direction of X^θ in a single mode's (x, p) plane.
Eigen::Vector2d direction(double theta) {
    return {std::cos(theta), -std::sin(theta)};
}

double angle_of(const Eigen::Vector2d &u) {
    return wrap_angle(std::atan2(-u(1), u(0)));
}

// Maximises uᵀ B u + 2 wᵀ u over unit vectors u. Stationary points satisfy (μ - B) u = w; the
// global maximum has μ ≥ λ_max(B), found from the secular equation Σ c_i² / (μ - λ_i)² = 1.
Eigen::Vector2d best_unit_vector(const Eigen::Matrix2d &b, const Eigen::Vector2d &w) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(b);
    const Eigen::Vector2d l = eig.eigenvalues();
    const Eigen::Matrix2d q = eig.eigenvectors();
    const Eigen::Vector2d c = q.transpose() * w;
    double cn = c.norm();
    double scale = std::max({std::abs(l(0)), std::abs(l(1)), cn, 1e-300});
    if (cn <= 1e-15 * scale) {
        return q.col(1);
    }
    double gap = l(1) - l(0);
    if (std::abs(c(1)) <= 1e-14 * scale) {
        // Hard case: the linear term has no component along the top eigenvector.
        if (gap > 0 && std::abs(c(0)) < gap) {
            double u0 = c(0) / gap;
            Eigen::Vector2d z(u0, std::sqrt(1 - u0 * u0) * (c(1) < 0 ? -1.0 : 1.0));
            return q * z;
        }
    }
    if (gap <= 1e-15 * scale) {
        return w.normalized();
    }
    auto secular = [&](double mu) {
        double a = c(0) / (mu - l(0));
        double d = c(1) / (mu - l(1));
        return a * a + d * d - 1;
    };
    // φ decreases on (λ_max, ∞); φ(λ_max + |c|) ≤ 0.
    double lo = l(1);
    double hi = l(1) + cn;
    for (int i = 0; i < 200 && hi - lo > 4e-16 * std::max(std::abs(hi), 1.0); i++) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (secular(mid) > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double mu = hi;
    Eigen::Vector2d z(c(0) / (mu - l(0)), c(1) / (mu - l(1)));
    return (q * z).normalized();
}

double local_variance(const Eigen::MatrixXd &cov, const std::vector<double> &angles) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cov.rows());
    for (size_t i = 0; i < angles.size(); i++) {
        v.segment<2>(2 * static_cast<Eigen::Index>(i)) = direction(angles[i]);
    }
    return v.dot(cov * v);
}

// Optimal angle of mode i given all others.
double best_angle(const Eigen::MatrixXd &cov, const std::vector<double> &angles, size_t i) {
    auto ii = 2 * static_cast<Eigen::Index>(i);
    Eigen::Matrix2d b = cov.block<2, 2>(ii, ii);
    Eigen::Vector2d w = Eigen::Vector2d::Zero();
    for (size_t j = 0; j < angles.size(); j++) {
        if (j != i) {
            w += cov.block<2, 2>(ii, 2 * static_cast<Eigen::Index>(j)) * direction(angles[j]);
        }
    }
    return angle_of(best_unit_vector(b, w));
}

std::pair<double, std::vector<double>> optimise_two_modes(const Eigen::MatrixXd &cov) {
    auto profile = [&](double theta1) {
        std::vector<double> angles{theta1, 0.0};
        angles[1] = best_angle(cov, angles, 1);
        return local_variance(cov, angles);
    };
    constexpr int kScan = 720;
    double step = 2 * kPi / kScan;
    double best_theta = 0;
    double best_value = profile(0);
    for (int k = 1; k < kScan; k++) {
        double t = k * step;
        double value = profile(t);
        // Ties (flat directions) keep the earliest angle so reports are canonical.
        if (value > best_value + 1e-13 * std::abs(best_value)) {
            best_value = value;
            best_theta = t;
        }
    }
    double refined = golden_maximize(profile, best_theta - step, best_theta + step, 1e-12);
    std::vector<double> angles{wrap_angle(refined), 0.0};
    angles[1] = best_angle(cov, angles, 1);
    double value = local_variance(cov, angles);
    if (!(value > best_value + 1e-13 * std::abs(best_value))) {
        angles = {best_theta, 0.0};
        angles[1] = best_angle(cov, angles, 1);
        value = local_variance(cov, angles);
    }
    return {value, angles};
}

std::pair<double, std::vector<double>> optimise_many_modes(const Eigen::MatrixXd &cov, size_t n) {
    constexpr int kStarts = 8;
    Rng rng(derive_stream_seed(0x6E656666ULL, n));
    std::uniform_real_distribution<double> uniform(0.0, 2 * kPi);
    double best_value = -kInf;
    std::vector<double> best_angles;
    for (int s = 0; s < kStarts; s++) {
        std::vector<double> angles(n, 0.0);
        if (s > 0) {
            for (auto &a : angles) {
                a = uniform(rng);
            }
        }
        double value = local_variance(cov, angles);
        for (int sweep = 0; sweep < 10000; sweep++) {
            for (size_t i = 0; i < n; i++) {
                angles[i] = best_angle(cov, angles, i);
            }
            double next = local_variance(cov, angles);
            bool done = next - value <= 1e-15 * std::abs(next);
            value = std::max(value, next);
            if (done) {
                break;
            }
        }
        if (value > best_value) {
            best_value = value;
            best_angles = angles;
        }
    }
    return {best_value, best_angles};
}

void check_positive(double v, const char *what) {
    if (!(v > 0) || std::isinf(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

std::string_view to_string(SizeKind kind) {
    return kind == SizeKind::ExactPure ? "exact-pure" : "lower-bound";
}

std::string_view to_string(BoundConvention convention) {
    return convention == BoundConvention::AsPrinted ? "as-printed" : "derivation-consistent";
}

BoundConvention parse_convention(std::string_view text) {
    if (text == "as-printed") {
        return BoundConvention::AsPrinted;
    }
    if (text == "derivation-consistent") {
        return BoundConvention::DerivationConsistent;
    }
    throw std::invalid_argument("unknown convention: " + std::string(text));
}

nlohmann::json to_json(const EffectiveSizeReport &report) {
    nlohmann::json j;
    j["kind"] = to_string(report.kind);
    j["n_modes"] = report.n_modes;
    j["optimal_angles"] = report.optimal_angles;
    if (report.kind == SizeKind::ExactPure) {
        j["n_eff"] = report.n_eff;
        return j;
    }
    j["display_convention"] = to_string(report.convention);
    double printed = report.n_eff;
    double consistent = report.n_eff_other_convention.value_or(report.n_eff / 2);
    if (report.convention == BoundConvention::DerivationConsistent) {
        consistent = report.n_eff;
        printed = report.n_eff_other_convention.value_or(report.n_eff * 2);
    }
    j["n_eff"] = report.n_eff;
    j["n_eff_as_printed"] = printed;
    j["n_eff_derivation_consistent"] = consistent;
    return j;
}

std::pair<double, std::vector<double>> max_local_quadrature_variance(const GaussianState &state) {
    const Eigen::MatrixXd &cov = state.cov();
    size_t n = state.n_modes();
    if (n == 1) {
        std::vector<double> angles{0.0};
        angles[0] = best_angle(cov, angles, 0);
        return {local_variance(cov, angles), angles};
    }
    if (n == 2) {
        return optimise_two_modes(cov);
    }
    return optimise_many_modes(cov, n);
}

EffectiveSizeReport n_eff_pure_gaussian(const GaussianState &state) {
    if (!state.is_pure(1e-6)) {
        throw PreconditionError(
            "n_eff_pure_gaussian: state is mixed; use n_eff_lower_bound with a measured variance instead");
    }
    auto [value, angles] = max_local_quadrature_variance(state);
    size_t n = state.n_modes();
    return {value / static_cast<double>(n), SizeKind::ExactPure, BoundConvention::AsPrinted, angles, n, std::nullopt};
}

double n_eff_cat(double alpha_sq) {
    if (!(alpha_sq >= 0)) {
        throw std::invalid_argument("n_eff_cat: |alpha|^2 must be nonnegative");
    }
    return 2 * alpha_sq / (1 + std::exp(-2 * alpha_sq));
}

double n_eff_kitten_product(double alpha_sq, int n) {
    if (n < 1) {
        throw std::invalid_argument("n_eff_kitten_product: n must be at least 1");
    }
    // n identical modes add n equal variances; the 1/(4n) normalisation cancels the n.
    return n_eff_cat(alpha_sq);
}

double n_eff_lower_bound(double v_minus, BoundConvention convention) {
    check_positive(v_minus, "v_minus");
    return convention == BoundConvention::AsPrinted ? 1 / v_minus : 1 / (2 * v_minus);
}

EffectiveSizeReport n_eff_lower_bound_report(double v_minus, BoundConvention display) {
    BoundConvention other = display == BoundConvention::AsPrinted ? BoundConvention::DerivationConsistent
                                                                  : BoundConvention::AsPrinted;
    return {n_eff_lower_bound(v_minus, display),
            SizeKind::LowerBound,
            display,
            {kPi / 2, kPi / 2},
            2,
            n_eff_lower_bound(v_minus, other)};
}

double coherence_range(double v_minus) {
    check_positive(v_minus, "v_minus");
    return 1 / std::sqrt(v_minus);
}

double cap_quadrature_noise(double dh1, double dh2) {
    if (!(dh1 >= 0 && dh2 >= 0)) {
        throw std::invalid_argument("cap_quadrature_noise: noise variances must be nonnegative");
    }
    double total = dh1 + dh2;
    return total == 0 ? kInf : 1 / total;
}

double cap_loss(double eta) {
    if (!(eta >= 0 && eta <= 1)) {
        throw std::invalid_argument("cap_loss: transmission must lie in [0, 1]");
    }
    return eta == 1 ? kInf : 1 / (1 - eta);
}

double cap_phase_noise(double dphi_sq, double g) {
    if (!(dphi_sq >= 0) || !std::isfinite(g)) {
        throw std::invalid_argument("cap_phase_noise: phase variance must be nonnegative and g finite");
    }
    if (dphi_sq == 0) {
        return kInf;
    }
    double sh = std::sinh(g);
    return 1 / (dphi_sq * (2 * sh * sh + 1));
}

double equivalent_cat_alpha_sq(double n_eff) {
    check_positive(n_eff, "n_eff");
    auto f = [n_eff](double a) { return n_eff_cat(a) - n_eff; };
    double lo = n_eff / 2;
    double hi = n_eff;
    if (f(lo) >= 0) {
        return lo;
    }
    if (f(hi) <= 0) {
        return hi;
    }
    return bisect(f, lo, hi, 1e-12 * std::max(1.0, n_eff));
}

double equivalent_cat_photon_number(double n_eff) {
    double a = equivalent_cat_alpha_sq(n_eff);
    return a * std::tanh(a);
}

double certified_size(double sigma_max_value, double x_c) {
    if (!(sigma_max_value > 0 && x_c > 0)) {
        throw std::invalid_argument("certified_size: both ranges must be positive");
    }
    return std::min(sigma_max_value, x_c);
}

}  // namespace macrocat
