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

// Effective-size measures.
//
// The effective size of an n-mode state is N_eff = max_θ F(Σ_i X_i^{θ_i}) / (4n), with F the
// quantum Fisher information; for pure states F = 4 V. Mixed states are only handled through the
// variance lower bound F(B) ≥ <i[A,B]>² / V(A) with A the squeezed conjugate combination.

#ifndef MACROCAT_MACROSCOPICITY_H
#define MACROCAT_MACROSCOPICITY_H

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "macrocat/gaussian_core.h"

namespace macrocat {

enum class SizeKind { ExactPure, LowerBound };

/// Normalisation of the variance lower bound. AsPrinted is 1 / V, the form used for historical
/// comparison plots; DerivationConsistent is 1 / (2V), which follows from
/// V(A) F(B) ≥ <i[A,B]>² = 4 with N_eff = F / 8 for two modes and is tight on tms(g).
enum class BoundConvention { AsPrinted, DerivationConsistent };

std::string_view to_string(SizeKind kind);
std::string_view to_string(BoundConvention convention);
/// Parses "as-printed" / "derivation-consistent".
BoundConvention parse_convention(std::string_view text);

struct EffectiveSizeReport {
    double n_eff;
    SizeKind kind;
    BoundConvention convention;
    std::vector<double> optimal_angles;
    size_t n_modes;
    /// Populated for lower-bound reports: the value under the other convention.
    std::optional<double> n_eff_other_convention;
};

/// JSON object with both bound conventions present for lower-bound reports.
nlohmann::json to_json(const EffectiveSizeReport &report);

/// One reported squeezing experiment. v_minus is the measured variance of the squeezed conjugate
/// combination in vacuum-1/2 units (a vacuum input gives v_minus = 1).
struct ExperimentRecord {
    std::string label;
    int year;
    double v_minus;
    std::optional<double> mean_photon_number;
    std::string source_note;
};

/// Exact N_eff of a pure Gaussian state, max_θ V(Σ X_i^{θ_i}) / n.
/// n = 1: largest eigenvalue of the covariance block. n = 2: the inner angle is solved exactly
/// (2×2 trust-region subproblem) and the outer angle by a dense scan refined with golden-section
/// search. n > 2: multi-start coordinate ascent with the same exact per-coordinate update.
/// Throws PreconditionError for mixed input.
EffectiveSizeReport n_eff_pure_gaussian(const GaussianState &state);

/// max_θ V(Σ X_i^{θ_i}) together with the maximising angles. Works for any state.
std::pair<double, std::vector<double>> max_local_quadrature_variance(const GaussianState &state);

/// 2|α|² / (1 + e^{-2|α|²}) for the even cat state. This is the excess of the cat's largest
/// quadrature variance over the vacuum value 1/2, i.e. V(X^0) - 1/2 = |α|²(1 + tanh|α|²).
double n_eff_cat(double alpha_sq);

/// Product of n identical cats; the 1/(4n) normalisation makes this equal to n_eff_cat(alpha_sq).
double n_eff_kitten_product(double alpha_sq, int n);

double n_eff_lower_bound(double v_minus, BoundConvention convention);

/// Lower-bound report with both conventions filled in (`n_eff` follows `display`).
EffectiveSizeReport n_eff_lower_bound_report(double v_minus, BoundConvention display = BoundConvention::AsPrinted);

/// 1 / √v_minus.
double coherence_range(double v_minus);

/// 1 / (Δ²h₁ + Δ²h₂); +∞ when both vanish.
double cap_quadrature_noise(double dh1, double dh2);

/// 1 / (1 - η); +∞ at η = 1.
double cap_loss(double eta);

/// 1 / (Δφ² (2 sinh² g + 1)).
double cap_phase_noise(double dphi_sq, double g);

/// Photon number a·tanh(a) of the even cat whose N_eff equals `n_eff`, where a = |α|² solves
/// 2a / (1 + e^{-2a}) = n_eff by bisection on [n_eff/2, n_eff].
double equivalent_cat_photon_number(double n_eff);

/// |α|² solving n_eff_cat(|α|²) = n_eff.
double equivalent_cat_alpha_sq(double n_eff);

/// min(σ_max, x_C): the range over which correlations are certified quantum.
double certified_size(double sigma_max_value, double x_c);

inline bool is_unbounded(double cap) {
    return cap == std::numeric_limits<double>::infinity();
}

}  // namespace macrocat

#endif
