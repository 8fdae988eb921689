/*
   Copyright 2026 The sid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <numbers>
#include <span>

#include "sid/memory_drift.hpp"
#include "sid/noise_schedule.hpp"

namespace sid {

/// Closed-form scalar semiflows of the limit ODEs.
enum class FlowKind {
    Logistic,  ///< x' = (1 - x^2)/2 on [-1, 1]
    Pendulum,  ///< x' = -sin(x)/2 on [-pi, pi]
};

/// Phi_h(x). Throws DomainError for x outside the flow's domain or h < 0.
double flow(FlowKind kind, double h, double x);

/// sup over samples with t <= t_i <= t + window of |x(t_i) - Phi_{t_i - t}(x(t))|,
/// on the trajectory's own sample grid. The path must have a sample at t and
/// reach t + window.
double pseudo_gap(std::span<const PathSample> path, FlowKind kind, double t, double window);

enum class NoiseCondition { Satisfied, Violated };

struct NoiseClassification {
    NoiseCondition verdict;   ///< symbolic answer; authoritative on the menu
    double numeric_integral;  ///< int_0^{1e6} exp(-1/eps(t)) dt
    double tail_mass;         ///< 1e6 * exp(-1/eps(1e6))
    bool numeric_divergence;  ///< tail mass carries at least half the integral
};

/// Whether int_0^inf exp(-k/eps(t)) dt < inf for every k > 0. Custom
/// schedules throw UnsupportedFamily.
NoiseClassification classify_noise_condition(const NoiseSchedule& eps);

struct ContractionReport {
    bool holds = true;
    double worst_ratio = 0.0;  ///< max |Phi_T(x)| / (e^{-rate T} |x|) over x != 0
    std::size_t points = 0;
};

/// Checks |Phi_T(x)| <= e^{-rate T} |x| for the pendulum flow at every
/// sample x, which must lie in [-pi/2, pi/2]. The default rate 2/pi comes
/// from |sin x| >= (2/pi)|x| on that interval; with the 1/2 in front of the
/// field the bound only holds up to rate 1/pi, so the default reports failure.
ContractionReport contraction_bound_check(std::span<const double> xs, double window,
                                          double rate = 2.0 / std::numbers::pi);

}  // namespace sid
