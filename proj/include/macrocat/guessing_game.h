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

// Coarse-grained guessing game. Alice measures her mode exactly and keeps the sign of the
// outcome; Bob measures the partner quadrature through a detector with Gaussian read-out noise of
// standard deviation σ and guesses Alice's sign from the sign of his reading.

#ifndef MACROCAT_GUESSING_GAME_H
#define MACROCAT_GUESSING_GAME_H

#include <cstdint>
#include <optional>
#include <variant>

namespace macrocat {

struct TmsSource {
    double g;
};

struct CatSource {
    double alpha;
};

struct GameParams {
    std::variant<TmsSource, CatSource> source;
    double detector_sigma = 0;
    uint64_t samples = 1'000'000;
    uint64_t seed = 0xC0FFEE;
};

struct GameResult {
    double p_guess_empirical;
    double standard_error;
    uint64_t samples_used;
};

/// 1/2 + arctan(sinh 2g / √(1 + 2σ² cosh 2g)) / π.
double p_guess_tms(double g, double sigma);

/// Largest σ with p_guess_tms(g, σ) ≥ p_target, by exact inversion:
/// σ² = (sinh² 2g · cot²(π (p - 1/2)) - 1) / (2 cosh 2g).
/// Throws std::out_of_range unless 1/2 < p_target < p_guess_tms(g, 0).
double sigma_max_tms(double p_target, double g);

/// An alternative closed form,
/// √((-1 + N(1/2 + N) cot²(1/2 - P)) / (2 + 2N)) with N = 2 sinh² g. Kept only as a diagnostic
/// next to sigma_max_tms; the two do not coincide. Empty when the radicand is negative.
std::optional<double> sigma_max_tms_printed(double p_target, double g);

/// √(|α|² / erf⁻¹(P)² - 1/2), the tolerable noise quoted for the qubit-tagged cat state.
/// Throws std::out_of_range when the radicand is negative or P is outside (0, 1).
double sigma_max_cat(double p_target, double alpha);

/// Success probability of the sign-binning game on ±α: (1 + erf(|α| / √(1/2 + σ²))) / 2.
double p_guess_cat(double alpha, double sigma);

/// Exact inversion of p_guess_cat: √(|α|² / erf⁻¹(2P - 1)² - 1/2).
double sigma_max_cat_binned(double p_target, double alpha);

/// Monte Carlo of the game on tms(g). Bob flips the sign of his reading because x_1 and x_2 are
/// anti-correlated in this library's convention.
GameResult simulate_tms_game(const GameParams &params);

/// Monte Carlo of the game on (|↑>|α> - |↓>|-α>)/√2: Alice's qubit outcome picks ±α, Bob reads
/// X^0 with total variance 1/2 + σ².
GameResult simulate_cat_game(const GameParams &params);

/// Dispatches on params.source.
GameResult simulate_game(const GameParams &params);

}  // namespace macrocat

#endif
