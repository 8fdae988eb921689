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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sid/sphere_geometry.hpp"

namespace sid {

/// Nondecreasing growth profile g used by the weighted schedule.
class GrowthFunction {
public:
    enum class Kind { Logarithmic, Power, Constant };

    /// log(t + shift), shift >= 1 so that g(0) >= 0.
    static GrowthFunction logarithmic(double shift = 1.0);
    /// t^p with p >= 0.
    static GrowthFunction power(double exponent);
    static GrowthFunction constant(double value);

    double operator()(double t) const;
    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return param_; }
    /// Whether g(t) / log(t) stays bounded as t grows.
    bool log_bounded() const noexcept;

private:
    GrowthFunction(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

/// Time weight in front of the interaction integral. weight(t) is the signed
/// coupling: a for Raw, c/t for Normalized, coupling * g(t)/t for Weighted.
/// Attraction means a negative weight.
///
/// Before `onset` the drift is switched off entirely (pure diffusion), which
/// lets normalized runs skip the 1/t singularity at the origin.
class WeightSchedule {
public:
    enum class Kind { Raw, Normalized, Weighted };

    static WeightSchedule raw(double a);
    static WeightSchedule normalized(double c, double onset = 0.0);
    static WeightSchedule weighted(double coupling, GrowthFunction g, double onset = 0.0);

    /// Throws UndefinedWeight for Normalized/Weighted at t <= 0.
    double weight(double t) const;
    bool active(double t) const noexcept { return t >= onset_; }

    Kind kind() const noexcept { return kind_; }
    double coupling() const noexcept { return coupling_; }
    double onset() const noexcept { return onset_; }
    const std::optional<GrowthFunction>& growth() const noexcept { return growth_; }

    /// Set when the growth function outpaces log(t); such weights fall
    /// outside the regime where occupation measures are known to collapse.
    std::optional<std::string> warning() const;

private:
    WeightSchedule(Kind kind, double coupling, double onset, std::optional<GrowthFunction> g)
        : kind_(kind), coupling_(coupling), onset_(onset), growth_(g)
    {
    }

    Kind kind_;
    double coupling_;
    double onset_;
    std::optional<GrowthFunction> growth_;
};

struct FourierMode {
    int k;             ///< harmonic, k >= 1
    double amplitude;  ///< relative weight a_k of sin(k(.))
};

/// Sufficient statistics of a circle history for a finite Fourier kernel:
/// A_k = int_0^t cos(k theta_s) ds and B_k = int_0^t sin(k theta_s) ds.
class FourierMemory {
public:
    FourierMemory() = default;
    explicit FourierMemory(std::vector<FourierMode> modes);

    const std::vector<FourierMode>& modes() const noexcept { return modes_; }
    std::span<const double> cos_sums() const noexcept { return cos_sums_; }
    std::span<const double> sin_sums() const noexcept { return sin_sums_; }
    double elapsed() const noexcept { return elapsed_; }

    /// Position of harmonic k in modes(), if present.
    std::optional<std::size_t> find(int k) const noexcept;

    /// sum_k k a_k [sin(k theta) A_k - cos(k theta) B_k], without the time weight.
    double kernel(double theta) const noexcept;

    /// Left-endpoint quadrature step: A_k += h cos(k theta), B_k += h sin(k theta).
    void accumulate(double theta, double h) noexcept;

    /// kernel(theta) followed by accumulate(theta, h), sharing the harmonics.
    double kernel_then_accumulate(double theta, double h) noexcept;

private:
    std::vector<FourierMode> modes_;
    std::vector<double> cos_sums_;
    std::vector<double> sin_sums_;
    double elapsed_ = 0.0;
};

/// U = int_0^t X(s) ds plus elapsed time. U may start nonzero.
struct SphereMemory {
    Vector sum;
    double elapsed = 0.0;

    explicit SphereMemory(std::size_t ambient_dim) : sum(ambient_dim) {}
    SphereMemory(Vector initial, double elapsed_time) : sum(std::move(initial)), elapsed(elapsed_time) {}

    void accumulate(const SpherePoint& x, double h);
};

/// Circle drift from the accumulators, evaluated at the memory's elapsed time.
/// Zero before the schedule's onset.
double circle_drift(const FourierMemory& mem, double theta, const WeightSchedule& sched);

/// Value-returning form of FourierMemory::accumulate. Requires h > 0.
FourierMemory circle_accumulate(FourierMemory mem, double theta, double h);

/// Tangent drift -w(t) (U - <x, U> x) at x.
Vector sphere_drift(const SphereMemory& mem, const SpherePoint& x, const WeightSchedule& sched);

struct PathSample {
    double t;
    double value;
};

/// Literal O(N) evaluation of the circle drift. The last sample fixes the
/// current time; earlier samples contribute sin(k(theta - theta_i)) over
/// [t_i, t_{i+1}). Same quadrature as the accumulators.
double brute_force_circle(std::span<const PathSample> path, double theta,
                          std::span<const FourierMode> modes, const WeightSchedule& sched);

/// Literal O(N) evaluation of the sphere drift. history[i] is X at times[i];
/// the last entry only fixes the current time, as in brute_force_circle.
Vector brute_force_sphere(std::span<const double> times, std::span<const SpherePoint> history,
                          const SpherePoint& x, const WeightSchedule& sched);

}  // namespace sid
