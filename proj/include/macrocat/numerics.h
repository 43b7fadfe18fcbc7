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

#ifndef MACROCAT_NUMERICS_H
#define MACROCAT_NUMERICS_H

#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace macrocat {

inline constexpr double kPi = std::numbers::pi;

/// Raised when a truncated basis cannot represent a state to the requested accuracy.
class TruncationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a caller hands a state or input outside an operation's precondition.
class PreconditionError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Reduces an angle into [0, 2π).
double wrap_angle(double theta);

/// Bisection on a bracket [lo, hi] where f(lo) and f(hi) have opposite signs.
/// Stops when the bracket is narrower than `tol` (absolute) or after `max_iter` halvings.
double bisect(const std::function<double(double)> &f, double lo, double hi, double tol, int max_iter = 200);

/// Golden-section maximisation of a unimodal function on [lo, hi].
/// Returns the abscissa of the maximum.
double golden_maximize(const std::function<double(double)> &f, double lo, double hi, double tol);

/// Inverse error function, Newton iteration on std::erf started from a rational seed.
/// Accurate to ~1e-12 for |y| < 1 - 1e-15.
double erf_inv(double y);

/// Seed of sub-stream `stream` derived from a master seed (splitmix64 finaliser applied to
/// seed ^ golden-ratio-scaled stream index). Used whenever sampling work is split into chunks:
/// chunk k of a run with seed s always draws from derive_stream_seed(s, k), so the output does
/// not depend on how chunks are scheduled.
uint64_t derive_stream_seed(uint64_t seed, uint64_t stream);

/// Generator type used by every Monte Carlo routine.
using Rng = std::mt19937_64;

/// Samples per independently seeded chunk.
inline constexpr uint64_t kSampleChunk = 1 << 16;

}  // namespace macrocat

#endif
