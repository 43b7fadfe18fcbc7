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

#include "macrocat/fock_oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "macrocat/numerics.h"

namespace macrocat {

using cplx = std::complex<double>;

FockVector::FockVector(size_t n_modes, size_t cutoff, Eigen::VectorXcd amplitudes, double tail_bound)
    : n_modes_(n_modes), cutoff_(cutoff), amplitudes_(std::move(amplitudes)), tail_bound_(tail_bound) {
    if (n_modes_ != 1 && n_modes_ != 2) {
        throw std::invalid_argument("FockVector: only one- and two-mode states are supported");
    }
    size_t expected = n_modes_ == 1 ? dim() : dim() * dim();
    if (static_cast<size_t>(amplitudes_.size()) != expected) {
        throw std::invalid_argument("FockVector: amplitude count does not match cutoff");
    }
}

cplx FockVector::amplitude(size_t n) const {
    if (n_modes_ != 1 || n > cutoff_) {
        throw std::out_of_range("FockVector::amplitude(n): single-mode index out of range");
    }
    return amplitudes_(n);
}

cplx FockVector::amplitude(size_t n1, size_t n2) const {
    if (n_modes_ != 2 || n1 > cutoff_ || n2 > cutoff_) {
        throw std::out_of_range("FockVector::amplitude(n1, n2): two-mode index out of range");
    }
    return amplitudes_(n1 * dim() + n2);
}

double FockVector::norm() const {
    return amplitudes_.squaredNorm();
}

double FockVector::norm_deficit() const {
    return 1 - norm();
}

FockVector FockVector::renormalized() const {
    double n = std::sqrt(norm());
    if (n == 0) {
        throw std::domain_error("FockVector::renormalized: zero vector");
    }
    return FockVector(n_modes_, cutoff_, amplitudes_ / n, 0);
}

Eigen::MatrixXcd FockVector::as_matrix() const {
    if (n_modes_ != 2) {
        throw std::logic_error("FockVector::as_matrix: two-mode states only");
    }
    // Row-major index n1 * dim + n2.
    Eigen::MatrixXcd c(dim(), dim());
    for (size_t n1 = 0; n1 < dim(); n1++) {
        for (size_t n2 = 0; n2 < dim(); n2++) {
            c(n1, n2) = amplitudes_(n1 * dim() + n2);
        }
    }
    return c;
}

namespace {

Eigen::VectorXcd from_matrix(const Eigen::MatrixXcd &c) {
    Eigen::Index d = c.rows();
    Eigen::VectorXcd v(d * d);
    for (Eigen::Index n1 = 0; n1 < d; n1++) {
        for (Eigen::Index n2 = 0; n2 < d; n2++) {
            v(n1 * d + n2) = c(n1, n2);
        }
    }
    return v;
}

}  // namespace

FockVector tms_fock(double g, size_t cutoff, double tail_tol) {
    if (cutoff < 1) {
        throw std::invalid_argument("tms_fock: cutoff must be at least 1");
    }
    if (!std::isfinite(g)) {
        throw std::invalid_argument("tms_fock: g must be finite");
    }
    double t = std::tanh(g);
    double t2 = t * t;
    double tail_bound = std::pow(t2, static_cast<double>(cutoff + 1)) / (1 - t2);
    size_t d = cutoff + 1;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d * d);
    double c = 1 / std::cosh(g);
    for (size_t k = 0; k <= cutoff; k++) {
        amps(k * d + k) = c;
        c *= -t;
    }
    FockVector out(2, cutoff, std::move(amps), tail_bound);
    if (out.norm_deficit() > tail_tol) {
        throw TruncationError("tms_fock: truncation deficit exceeds tolerance; raise the cutoff");
    }
    return out;
}

FockVector cat_state(cplx alpha, int relative_sign, size_t cutoff, double tail_tol) {
    if (relative_sign != 1 && relative_sign != -1) {
        throw std::invalid_argument("cat_state: relative_sign must be +1 or -1");
    }
    double a = std::norm(alpha);
    // Squared norm of |α> ± |-α>.
    double norm_sq = relative_sign > 0 ? 2 * (1 + std::exp(-2 * a)) : -2 * std::expm1(-2 * a);
    if (norm_sq <= 0) {
        throw std::invalid_argument("cat_state: odd cat with alpha = 0 is the zero vector");
    }
    double scale = 1 / std::sqrt(norm_sq);
    Eigen::VectorXcd amps(cutoff + 1);
    cplx coherent = std::exp(-a / 2);  // e^{-|α|²/2} α^n / √n!
    for (size_t n = 0; n <= cutoff; n++) {
        if (n > 0) {
            coherent *= alpha / std::sqrt(static_cast<double>(n));
        }
        double parity = (n % 2 == 0) ? 1.0 : -1.0;
        amps(n) = (1 + relative_sign * parity) * scale * coherent;
    }
    // Poisson tail Σ_{n>K} e^{-a} a^n / n!, bounded by its first term over a geometric ratio.
    double k1 = static_cast<double>(cutoff + 1);
    double tail_bound;
    if (a == 0) {
        tail_bound = 0;
    } else if (a >= k1 + 1) {
        tail_bound = INFINITY;
    } else {
        double log_first = -a + k1 * std::log(a) - std::lgamma(k1 + 1);
        tail_bound = 4 / norm_sq * std::exp(log_first) / (1 - a / (k1 + 1));
    }
    FockVector out(1, cutoff, std::move(amps), tail_bound);
    if (out.norm_deficit() > tail_tol || tail_bound > tail_tol) {
        throw TruncationError("cat_state: truncation deficit exceeds tolerance; raise the cutoff");
    }
    return out;
}

FockVector number_state(size_t n, size_t cutoff) {
    if (n > cutoff) {
        throw std::out_of_range("number_state: n above cutoff");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(cutoff + 1);
    amps(n) = 1;
    return FockVector(1, cutoff, std::move(amps));
}

FockVector product_state(const FockVector &a, const FockVector &b) {
    if (a.n_modes() != 1 || b.n_modes() != 1 || a.cutoff() != b.cutoff()) {
        throw std::invalid_argument("product_state: need two single-mode vectors with equal cutoffs");
    }
    Eigen::MatrixXcd c = a.amplitudes() * b.amplitudes().transpose();
    double tail = a.tail_bound() + b.tail_bound();
    return FockVector(2, a.cutoff(), from_matrix(c), tail);
}

FockOperator::FockOperator(size_t n_modes, size_t cutoff, std::vector<LocalTerm> terms, std::string label)
    : n_modes_(n_modes), cutoff_(cutoff), terms_(std::move(terms)), label_(std::move(label)) {
    if (n_modes_ != 1 && n_modes_ != 2) {
        throw std::invalid_argument("FockOperator: only one- and two-mode operators are supported");
    }
    for (const auto &t : terms_) {
        if (t.mode >= n_modes_) {
            throw std::out_of_range("FockOperator: term acts on a mode outside the system");
        }
        if (t.matrix.rows() != static_cast<Eigen::Index>(cutoff_ + 1) || t.matrix.cols() != t.matrix.rows()) {
            throw std::invalid_argument("FockOperator: local matrix has the wrong dimension");
        }
    }
}

Eigen::VectorXcd FockOperator::apply(const FockVector &state) const {
    if (state.n_modes() != n_modes_ || state.cutoff() != cutoff_) {
        throw std::invalid_argument("FockOperator::apply: state and operator dimensions differ");
    }
    if (n_modes_ == 1) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.amplitudes().size());
        for (const auto &t : terms_) {
            out += t.matrix * state.amplitudes();
        }
        return out;
    }
    Eigen::MatrixXcd c = state.as_matrix();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(c.rows(), c.cols());
    for (const auto &t : terms_) {
        if (t.mode == 0) {
            out += t.matrix * c;
        } else {
            out += c * t.matrix.transpose();
        }
    }
    return from_matrix(out);
}

Eigen::MatrixXcd FockOperator::dense() const {
    Eigen::Index d = static_cast<Eigen::Index>(cutoff_ + 1);
    if (n_modes_ == 1) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
        for (const auto &t : terms_) {
            out += t.matrix;
        }
        return out;
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d * d, d * d);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    for (const auto &t : terms_) {
        const Eigen::MatrixXcd &left = t.mode == 0 ? t.matrix : id;
        const Eigen::MatrixXcd &right = t.mode == 0 ? id : t.matrix;
        for (Eigen::Index i = 0; i < d; i++) {
            for (Eigen::Index j = 0; j < d; j++) {
                if (left(i, j) != cplx(0)) {
                    out.block(i * d, j * d, d, d) += left(i, j) * right;
                }
            }
        }
    }
    return out;
}

FockOperator FockOperator::operator+(const FockOperator &other) const {
    if (other.n_modes_ != n_modes_ || other.cutoff_ != cutoff_) {
        throw std::invalid_argument("FockOperator::operator+: incompatible operators");
    }
    std::vector<LocalTerm> terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return FockOperator(n_modes_, cutoff_, std::move(terms), label_ + " + " + other.label_);
}

FockOperator FockOperator::scaled(double factor) const {
    std::vector<LocalTerm> terms = terms_;
    for (auto &t : terms) {
        t.matrix *= factor;
    }
    return FockOperator(n_modes_, cutoff_, std::move(terms), std::to_string(factor) + "*(" + label_ + ")");
}

FockOperator FockOperator::on_mode(size_t mode, size_t n_modes) const {
    if (n_modes_ != 1) {
        throw std::logic_error("FockOperator::on_mode: operator is already multi-mode");
    }
    std::vector<LocalTerm> terms = terms_;
    for (auto &t : terms) {
        t.mode = mode;
    }
    return FockOperator(n_modes, cutoff_, std::move(terms), label_ + "_" + std::to_string(mode + 1));
}

FockOperator annihilation(size_t cutoff) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    for (size_t n = 1; n <= cutoff; n++) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return FockOperator(1, cutoff, {{0, a}}, "a");
}

FockOperator creation(size_t cutoff) {
    Eigen::MatrixXcd a = annihilation(cutoff).dense();
    return FockOperator(1, cutoff, {{0, a.adjoint()}}, "a†");
}

FockOperator number_operator(size_t cutoff) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    for (size_t k = 0; k <= cutoff; k++) {
        n(k, k) = static_cast<double>(k);
    }
    return FockOperator(1, cutoff, {{0, n}}, "n");
}

FockOperator quadrature_operator(size_t cutoff, double theta) {
    Eigen::MatrixXcd a = annihilation(cutoff).dense();
    cplx phase = std::polar(1.0, theta);
    Eigen::MatrixXcd x = (a * phase + a.adjoint() * std::conj(phase)) / std::sqrt(2.0);
    return FockOperator(1, cutoff, {{0, x}}, "X^" + std::to_string(theta));
}

FockOperator local_quadrature_sum(size_t cutoff, std::span<const double> angles, std::span<const double> weights) {
    if (angles.size() != 2 || weights.size() != 2) {
        throw std::invalid_argument("local_quadrature_sum: two-mode sums only");
    }
    FockOperator first = quadrature_operator(cutoff, angles[0]).scaled(weights[0]).on_mode(0, 2);
    FockOperator second = quadrature_operator(cutoff, angles[1]).scaled(weights[1]).on_mode(1, 2);
    return first + second;
}

double pure_state_mean(const FockVector &state, const FockOperator &obs) {
    return state.amplitudes().dot(obs.apply(state)).real();
}

double pure_state_variance(const FockVector &state, const FockOperator &obs) {
    Eigen::VectorXcd o_psi = obs.apply(state);
    double mean = state.amplitudes().dot(o_psi).real();
    return o_psi.squaredNorm() - mean * mean;
}

double pure_state_qfi(const FockVector &state, const FockOperator &obs) {
    return 4 * pure_state_variance(state, obs);
}

Eigen::VectorXd hermite_functions(double x, size_t n_max) {
    // φ_{n+1} = √(2/(n+1)) x φ_n - √(n/(n+1)) φ_{n-1}, φ_0 = π^{-1/4} e^{-x²/2}.
    // Values are carried as mantissa · exp(log_scale) until the end.
    Eigen::VectorXd mantissa(n_max + 1);
    std::vector<double> log_scale(n_max + 1);
    double scale = -0.25 * std::log(kPi) - 0.5 * x * x;
    double prev = 0;
    double cur = 1;
    mantissa(0) = cur;
    log_scale[0] = scale;
    for (size_t n = 0; n < n_max; n++) {
        double nd = static_cast<double>(n);
        double next = std::sqrt(2 / (nd + 1)) * x * cur - std::sqrt(nd / (nd + 1)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > 1e150) {
            prev /= 1e150;
            cur /= 1e150;
            scale += std::log(1e150);
        }
        mantissa(n + 1) = cur;
        log_scale[n + 1] = scale;
    }
    Eigen::VectorXd out(n_max + 1);
    for (size_t n = 0; n <= n_max; n++) {
        double m = mantissa(n);
        out(n) = m == 0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(m)) + log_scale[n]), m);
    }
    return out;
}

namespace {

Eigen::MatrixXd hermite_table(std::span<const double> grid, size_t cutoff) {
    if (grid.size() < 2) {
        throw std::invalid_argument("position grid needs at least two points");
    }
    double max_spacing = 0;
    for (size_t i = 1; i < grid.size(); i++) {
        double h = grid[i] - grid[i - 1];
        if (!(h > 0)) {
            throw std::invalid_argument("position grid must be strictly increasing");
        }
        max_spacing = std::max(max_spacing, h);
    }
    if (kPi / max_spacing < std::sqrt(2.0 * static_cast<double>(cutoff) + 1)) {
        throw std::invalid_argument("position grid too coarse for the Fock cutoff (Nyquist check failed)");
    }
    Eigen::MatrixXd phi(grid.size(), cutoff + 1);
    for (size_t i = 0; i < grid.size(); i++) {
        phi.row(i) = hermite_functions(grid[i], cutoff).transpose();
    }
    return phi;
}

}  // namespace

Eigen::MatrixXcd joint_x_amplitude(const FockVector &state, std::span<const double> grid) {
    if (state.n_modes() != 2) {
        throw std::invalid_argument("joint_x_amplitude: two-mode state required");
    }
    Eigen::MatrixXcd phi = hermite_table(grid, state.cutoff()).cast<cplx>();
    return phi * state.as_matrix() * phi.transpose();
}

Eigen::MatrixXd joint_x_distribution(const FockVector &state, std::span<const double> grid) {
    return joint_x_amplitude(state, grid).cwiseAbs2();
}

Eigen::VectorXd x_distribution(const FockVector &state, std::span<const double> grid) {
    if (state.n_modes() != 1) {
        throw std::invalid_argument("x_distribution: single-mode state required");
    }
    Eigen::MatrixXcd phi = hermite_table(grid, state.cutoff()).cast<cplx>();
    return (phi * state.amplitudes()).cwiseAbs2();
}

}  // namespace macrocat
