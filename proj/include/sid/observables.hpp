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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sid/memory_drift.hpp"
#include "sid/record.hpp"
#include "sid/sphere_geometry.hpp"

namespace sid {

/// (Theta, R, V) of a sphere state. V falls back to X when U = 0.
struct PolarCoordinates {
    double alignment;
    double radius;
    SpherePoint direction;
};

PolarCoordinates polar_decompose(const SpherePoint& x, const Vector& u);

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

MeanStderr mean_stderr(std::span<const double> values);

/// exp(2t - 2(R Theta + q R^2)). The expectation identity holds with
/// q = n/4 on S^n; q = 1/4 is the circle case and the default.
double martingale_statistic(double t, double alignment, double radius, double quadratic = 0.25);

/// Ensemble mean and standard error of martingale_statistic over checkpoints
/// that share one time. Throws DomainError when empty or times differ.
MeanStderr martingale_stat(std::span<const Checkpoint> ensemble, double quadratic = 0.25);

/// Time-weighted occupation histogram of a sampled angle path on [0, 2 pi).
/// Sample i carries weight t_{i+1} - t_i (left endpoint), truncated at t_max.
std::vector<double> occupation_histogram(std::span<const PathSample> path, double t_max,
                                         std::size_t bins);

/// Same, over the record's theta column.
std::vector<double> occupation_histogram(const TrajectoryRecord& record, double t_max,
                                         std::size_t bins);

/// Angle reduced to [0, 2 pi).
double wrap_angle(double theta) noexcept;

/// Kolmogorov-Smirnov distance to the uniform law on the circle. The origin
/// is placed at the midpoint of the widest gap between sorted samples.
double ks_uniform_circle(std::span<const double> angles);

/// 5% critical value 1.36 / sqrt(N).
double ks_critical_5pct(std::size_t n) noexcept;

struct VonMisesFit {
    double concentration;  ///< beta-hat
    double location;       ///< varsigma-hat in [0, 2 pi)
    double resultant;      ///< mean resultant length
};

/// I1(beta) / I0(beta).
double bessel_ratio(double beta);

/// Inverts bessel_ratio by bisection on [0, 500], tolerance 1e-8.
double invert_bessel_ratio(double resultant);

/// Moment fit of exp(beta cos(x - varsigma)). Needs >= 100 samples; throws
/// DegenerateState when the resultant length is within 1e-12 of one.
VonMisesFit vonmises_fit(std::span<const double> angles);

/// Same from first trigonometric moments (mean cos, mean sin).
VonMisesFit vonmises_fit_moments(double mean_cos, double mean_sin);

/// Normalized von Mises density.
double vonmises_density(double x, double concentration, double location);

/// KS distance between binned masses on [0, 2 pi) and a von Mises law. Both
/// CDFs are compared at bin edges, counted from the edge nearest the
/// antimode location + pi.
double histogram_ks_vonmises(std::span<const double> masses, const VonMisesFit& fit);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    std::size_t points = 0;
};

/// OLS of log|obs - limit| on log t over t in [t_lo, t_hi]. Points with
/// |obs - limit| < 1e-14 are dropped; fewer than 5 usable points throws.
RateFit rate_fit(std::span<const double> times, std::span<const double> values, double limit,
                 double t_lo, double t_hi);

/// Which record column a fit reads.
enum class Observable { Theta, Alignment, Radius, Scalar };

std::optional<double> observable_value(const Checkpoint& c, Observable which);

/// rate_fit over one record column; the limit defaults to the terminal value.
RateFit rate_fit(const TrajectoryRecord& record, Observable which, std::optional<double> limit,
                 double t_lo, double t_hi);

/// min over checkpoints with t >= t_burnin of R_t / sqrt(t).
double liminf_ratio(const TrajectoryRecord& record, double t_burnin);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> values, double p);

struct SummaryStat {
    double mean = 0.0;
    double std_error = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    std::size_t count = 0;

    bool operator==(const SummaryStat&) const = default;
};

struct CheckpointSummary {
    double t = 0.0;
    std::map<std::string, SummaryStat> stats;

    bool operator==(const CheckpointSummary&) const = default;
};

/// Cross-trajectory statistics. `statistics` holds named scalars (test
/// statistics, fitted rates) added by whoever evaluates the ensemble.
struct EnsembleSummary {
    std::size_t trajectories = 0;
    std::vector<CheckpointSummary> checkpoints;
    std::map<std::string, double> statistics;

    bool operator==(const EnsembleSummary&) const = default;
};

/// Per-checkpoint summaries of every observable present in the records.
/// Reduction runs in record order, so the result does not depend on how the
/// records were produced.
EnsembleSummary summarize(std::span<const TrajectoryRecord> records);

}  // namespace sid
