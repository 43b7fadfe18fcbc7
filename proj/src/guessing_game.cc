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

#include "macrocat/guessing_game.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "macrocat/gaussian_core.h"
#include "macrocat/numerics.h"

namespace macrocat {

namespace {

void check_sigma(double sigma) {
    if (!(sigma >= 0)) {
        throw std::invalid_argument("detector sigma must be nonnegative");
    }
}

GameResult tally(uint64_t wins, uint64_t samples) {
    double p = static_cast<double>(wins) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1 - p) / static_cast<double>(samples)), samples};
}

}  // namespace

double p_guess_tms(double g, double sigma) {
    check_sigma(sigma);
    if (std::isinf(sigma)) {
        return 0.5;
    }
    return 0.5 + std::atan(std::sinh(2 * g) / std::sqrt(1 + 2 * sigma * sigma * std::cosh(2 * g))) / kPi;
}

double sigma_max_tms(double p_target, double g) {
    double p_best = p_guess_tms(g, 0);
    if (!(p_target > 0.5 && p_target <= p_best)) {
        throw std::out_of_range("sigma_max_tms: target probability not attainable at this squeezing");
    }
    double cot = 1 / std::tan(kPi * (p_target - 0.5));
    double s = std::sinh(2 * g);
    double sigma_sq = (s * s * cot * cot - 1) / (2 * std::cosh(2 * g));
    return std::sqrt(std::max(sigma_sq, 0.0));
}

std::optional<double> sigma_max_tms_printed(double p_target, double g) {
    double n = 2 * std::sinh(g) * std::sinh(g);
    double cot = 1 / std::tan(0.5 - p_target);
    double radicand = (-1 + n * (0.5 + n) * cot * cot) / (2 + 2 * n);
    if (!(radicand >= 0)) {
        return std::nullopt;
    }
    return std::sqrt(radicand);
}

double sigma_max_cat(double p_target, double alpha) {
    if (!(p_target > 0 && p_target < 1)) {
        throw std::out_of_range("sigma_max_cat: target probability must lie in (0, 1)");
    }
    double e = erf_inv(p_target);
    double radicand = alpha * alpha / (e * e) - 0.5;
    // Tolerate rounding at the boundary P = erf(√2 |α|).
    if (radicand < 0 && radicand > -1e-12) {
        radicand = 0;
    }
    if (!(radicand >= 0)) {
        throw std::out_of_range("sigma_max_cat: target probability not attainable at this amplitude");
    }
    return std::sqrt(radicand);
}

double p_guess_cat(double alpha, double sigma) {
    check_sigma(sigma);
    if (std::isinf(sigma)) {
        return 0.5;
    }
    return 0.5 * (1 + std::erf(std::abs(alpha) / std::sqrt(0.5 + sigma * sigma)));
}

double sigma_max_cat_binned(double p_target, double alpha) {
    if (!(p_target > 0.5 && p_target < 1)) {
        throw std::out_of_range("sigma_max_cat_binned: target probability must lie in (1/2, 1)");
    }
    double e = erf_inv(2 * p_target - 1);
    double radicand = alpha * alpha / (e * e) - 0.5;
    if (radicand < 0 && radicand > -1e-12) {
        radicand = 0;
    }
    if (!(radicand >= 0)) {
        throw std::out_of_range("sigma_max_cat_binned: target probability not attainable at this amplitude");
    }
    return std::sqrt(radicand);
}

GameResult simulate_tms_game(const GameParams &params) {
    const auto *tms = std::get_if<TmsSource>(&params.source);
    if (tms == nullptr) {
        throw std::invalid_argument("simulate_tms_game: source is not a two-mode squeezed state");
    }
    check_sigma(params.detector_sigma);
    if (params.samples == 0) {
        throw std::invalid_argument("simulate_tms_game: samples must be at least 1");
    }
    GaussianState state = two_mode_squeezed_vacuum(tms->g);
    const std::array<double, 2> angles{0.0, 0.0};
    // Bob reads -x_2, the partner that is positively correlated with x_1.
    double flip = state.cov()(0, 2) <= 0 ? -1.0 : 1.0;
    uint64_t wins = 0;
    uint64_t chunk = 0;
    for (uint64_t start = 0; start < params.samples; start += kSampleChunk, chunk++) {
        size_t rows = static_cast<size_t>(std::min<uint64_t>(kSampleChunk, params.samples - start));
        Eigen::MatrixXd xs = sample_quadrature_chunk(state, angles, rows, params.seed, chunk);
        // Read-out noise comes from its own derived stream, independent of the quadrature draws.
        Rng noise_rng(derive_stream_seed(params.seed ^ 0x5DEECE66DULL, chunk));
        std::normal_distribution<double> noise(0.0, 1.0);
        for (size_t r = 0; r < rows; r++) {
            double alice = xs(r, 0);
            double bob = flip * (xs(r, 1) + params.detector_sigma * noise(noise_rng));
            if ((alice >= 0) == (bob >= 0)) {
                wins++;
            }
        }
    }
    return tally(wins, params.samples);
}

GameResult simulate_cat_game(const GameParams &params) {
    const auto *cat = std::get_if<CatSource>(&params.source);
    if (cat == nullptr) {
        throw std::invalid_argument("simulate_cat_game: source is not a cat state");
    }
    check_sigma(params.detector_sigma);
    if (params.samples == 0) {
        throw std::invalid_argument("simulate_cat_game: samples must be at least 1");
    }
    double offset = std::sqrt(2.0) * std::abs(cat->alpha);
    double spread = std::sqrt(0.5 + params.detector_sigma * params.detector_sigma);
    uint64_t wins = 0;
    uint64_t chunk = 0;
    for (uint64_t start = 0; start < params.samples; start += kSampleChunk, chunk++) {
        uint64_t rows = std::min<uint64_t>(kSampleChunk, params.samples - start);
        Rng rng(derive_stream_seed(params.seed, chunk));
        std::bernoulli_distribution coin(0.5);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (uint64_t r = 0; r < rows; r++) {
            bool up = coin(rng);
            double reading = (up ? offset : -offset) + spread * normal(rng);
            if ((reading >= 0) == up) {
                wins++;
            }
        }
    }
    return tally(wins, params.samples);
}

GameResult simulate_game(const GameParams &params) {
    if (std::holds_alternative<TmsSource>(params.source)) {
        return simulate_tms_game(params);
    }
    return simulate_cat_game(params);
}

}  // namespace macrocat
