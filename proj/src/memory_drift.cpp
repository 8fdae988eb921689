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

#include "sid/memory_drift.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sid/errors.hpp"

namespace sid {

GrowthFunction GrowthFunction::logarithmic(double shift)
{
    if (!(shift >= 1.0)) throw ConfigError("logarithmic growth needs shift >= 1");
    return {Kind::Logarithmic, shift};
}

GrowthFunction GrowthFunction::power(double exponent)
{
    if (!(exponent >= 0.0)) throw ConfigError("power growth needs a nonnegative exponent");
    return {Kind::Power, exponent};
}

GrowthFunction GrowthFunction::constant(double value) { return {Kind::Constant, value}; }

double GrowthFunction::operator()(double t) const
{
    switch (kind_) {
    case Kind::Logarithmic: return std::log(t + param_);
    case Kind::Power: return std::pow(t, param_);
    case Kind::Constant: return param_;
    }
    return 0.0;
}

bool GrowthFunction::log_bounded() const noexcept
{
    return kind_ != Kind::Power || param_ == 0.0;
}

WeightSchedule WeightSchedule::raw(double a) { return {Kind::Raw, a, 0.0, std::nullopt}; }

WeightSchedule WeightSchedule::normalized(double c, double onset)
{
    if (onset < 0.0) throw ConfigError("schedule onset must be >= 0");
    return {Kind::Normalized, c, onset, std::nullopt};
}

WeightSchedule WeightSchedule::weighted(double coupling, GrowthFunction g, double onset)
{
    if (onset < 0.0) throw ConfigError("schedule onset must be >= 0");
    return {Kind::Weighted, coupling, onset, g};
}

double WeightSchedule::weight(double t) const
{
    if (kind_ == Kind::Raw) return coupling_;
    if (!(t > 0.0)) {
        throw UndefinedWeight("time weight of a normalized schedule is undefined at t=" +
                              std::to_string(t));
    }
    if (kind_ == Kind::Normalized) return coupling_ / t;
    return coupling_ * (*growth_)(t) / t;
}

std::optional<std::string> WeightSchedule::warning() const
{
    if (kind_ == Kind::Weighted && !growth_->log_bounded()) {
        return "weighted schedule: g(t)/log(t) is unbounded";
    }
    return std::nullopt;
}

FourierMemory::FourierMemory(std::vector<FourierMode> modes)
    : modes_(std::move(modes)), cos_sums_(modes_.size(), 0.0), sin_sums_(modes_.size(), 0.0)
{
    for (const FourierMode& m : modes_) {
        if (m.k < 1) throw ConfigError("Fourier harmonic must be >= 1, got " + std::to_string(m.k));
    }
}

std::optional<std::size_t> FourierMemory::find(int k) const noexcept
{
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].k == k) return i;
    }
    return std::nullopt;
}

double FourierMemory::kernel(double theta) const noexcept
{
    double sum = 0.0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const double k = modes_[i].k;
        sum += k * modes_[i].amplitude *
               (std::sin(k * theta) * cos_sums_[i] - std::cos(k * theta) * sin_sums_[i]);
    }
    return sum;
}

void FourierMemory::accumulate(double theta, double h) noexcept
{
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const double k = modes_[i].k;
        cos_sums_[i] += h * std::cos(k * theta);
        sin_sums_[i] += h * std::sin(k * theta);
    }
    elapsed_ += h;
}

double FourierMemory::kernel_then_accumulate(double theta, double h) noexcept
{
    double sum = 0.0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const double k = modes_[i].k;
        const double s = std::sin(k * theta);
        const double c = std::cos(k * theta);
        sum += k * modes_[i].amplitude * (s * cos_sums_[i] - c * sin_sums_[i]);
        cos_sums_[i] += h * c;
        sin_sums_[i] += h * s;
    }
    elapsed_ += h;
    return sum;
}

void SphereMemory::accumulate(const SpherePoint& x, double h)
{
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += h * x[i];
    elapsed += h;
}

double circle_drift(const FourierMemory& mem, double theta, const WeightSchedule& sched)
{
    if (!sched.active(mem.elapsed())) return 0.0;
    return sched.weight(mem.elapsed()) * mem.kernel(theta);
}

FourierMemory circle_accumulate(FourierMemory mem, double theta, double h)
{
    if (!(h > 0.0)) throw DomainError("circle_accumulate: step must be positive");
    mem.accumulate(theta, h);
    return mem;
}

Vector sphere_drift(const SphereMemory& mem, const SpherePoint& x, const WeightSchedule& sched)
{
    Vector drift = project_tangent(x, mem.sum);
    if (!sched.active(mem.elapsed)) return Vector(x.ambient_dim());
    return drift *= -sched.weight(mem.elapsed);
}

double brute_force_circle(std::span<const PathSample> path, double theta,
                          std::span<const FourierMode> modes, const WeightSchedule& sched)
{
    if (path.empty()) throw DomainError("brute_force_circle: empty path");
    const double now = path.back().t;
    if (!sched.active(now)) return 0.0;
    double sum = 0.0;
    for (const FourierMode& m : modes) {
        double mode_sum = 0.0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const double dt = path[i + 1].t - path[i].t;
            if (!(dt > 0.0)) throw DomainError("brute_force_circle: times must strictly increase");
            mode_sum += dt * std::sin(m.k * (theta - path[i].value));
        }
        sum += m.k * m.amplitude * mode_sum;
    }
    return sched.weight(now) * sum;
}

Vector brute_force_sphere(std::span<const double> times, std::span<const SpherePoint> history,
                          const SpherePoint& x, const WeightSchedule& sched)
{
    if (history.empty() || times.size() != history.size()) {
        throw DomainError("brute_force_sphere: need one time per history point");
    }
    const std::size_t dim = x.ambient_dim();
    Vector drift(dim);
    const double now = times.back();
    if (!sched.active(now)) return drift;
    for (std::size_t i = 0; i + 1 < history.size(); ++i) {
        if (history[i].ambient_dim() != dim) throw DimensionMismatch("brute_force_sphere");
        const double dt = times[i + 1] - times[i];
        if (!(dt > 0.0)) throw DomainError("brute_force_sphere: times must strictly increase");
        const double overlap = dot(x.vec(), history[i].vec());
        for (std::size_t j = 0; j < dim; ++j) drift[j] += dt * (history[i][j] - overlap * x[j]);
    }
    return drift *= -sched.weight(now);
}

}  // namespace sid
