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

#include "sid/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sid/errors.hpp"

namespace sid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

PolarCoordinates polar_decompose(const SpherePoint& x, const Vector& u)
{
    if (u.size() != x.ambient_dim()) throw DimensionMismatch("polar_decompose");
    const double radius = norm(u);
    SpherePoint direction = radius >= kRenormalizeFloor ? renormalize(u) : x;
    const double alignment = std::clamp(dot(direction.vec(), x.vec()), -1.0, 1.0);
    return {alignment, radius, std::move(direction)};
}

MeanStderr mean_stderr(std::span<const double> values)
{
    MeanStderr out;
    out.count = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        const double n = static_cast<double>(values.size());
        out.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

double martingale_statistic(double t, double alignment, double radius, double quadratic)
{
    return std::exp(2.0 * t - 2.0 * (radius * alignment + quadratic * radius * radius));
}

MeanStderr martingale_stat(std::span<const Checkpoint> ensemble, double quadratic)
{
    if (ensemble.empty()) throw DomainError("martingale_stat: empty ensemble");
    std::vector<double> values;
    values.reserve(ensemble.size());
    const double t = ensemble.front().t;
    for (const Checkpoint& c : ensemble) {
        if (c.t != t) throw DomainError("martingale_stat: checkpoints at different times");
        if (!c.alignment || !c.radius) throw DomainError("martingale_stat: checkpoint lacks Theta or R");
        values.push_back(martingale_statistic(c.t, *c.alignment, *c.radius, quadratic));
    }
    return mean_stderr(values);
}

double wrap_angle(double theta) noexcept
{
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w >= kTwoPi ? 0.0 : w;
}

std::vector<double> occupation_histogram(std::span<const PathSample> path, double t_max,
                                         std::size_t bins)
{
    if (bins < 8) throw DomainError("occupation_histogram: need at least 8 bins");
    if (path.empty()) throw DomainError("occupation_histogram: empty record");
    std::vector<double> mass(bins, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < path.size() && path[i].t < t_max; ++i) {
        const double end = i + 1 < path.size() ? std::min(path[i + 1].t, t_max) : t_max;
        const double weight = end - path[i].t;
        if (weight <= 0.0) continue;
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(wrap_angle(path[i].value) / kTwoPi *
                                                                     static_cast<double>(bins)));
        mass[bin] += weight;
        total += weight;
    }
    if (!(total > 0.0)) throw DomainError("occupation_histogram: record does not cover any time");
    for (double& m : mass) m /= total;
    return mass;
}

std::vector<double> occupation_histogram(const TrajectoryRecord& record, double t_max,
                                         std::size_t bins)
{
    std::vector<PathSample> path;
    path.reserve(record.checkpoints.size());
    for (const Checkpoint& c : record.checkpoints) {
        if (!c.theta) throw DomainError("occupation_histogram: record has no angle column");
        path.push_back({c.t, *c.theta});
    }
    return occupation_histogram(path, t_max, bins);
}

double ks_uniform_circle(std::span<const double> angles)
{
    const std::size_t n = angles.size();
    if (n < 10) throw DomainError("ks_uniform_circle: need at least 10 samples");
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = wrap_angle(angles[i]) / kTwoPi;
    std::sort(u.begin(), u.end());

    double widest = u.front() + 1.0 - u.back();
    double origin = u.back() + 0.5 * widest;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double gap = u[i + 1] - u[i];
        if (gap > widest) {
            widest = gap;
            origin = u[i] + 0.5 * gap;
        }
    }
    origin -= std::floor(origin);

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = u[i] - origin;
        if (r < 0.0) r += 1.0;
        v[i] = r;
    }
    std::sort(v.begin(), v.end());
    const double dn = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d = std::max(d, static_cast<double>(i + 1) / dn - v[i]);
        d = std::max(d, v[i] - static_cast<double>(i) / dn);
    }
    return d;
}

double ks_critical_5pct(std::size_t n) noexcept { return 1.36 / std::sqrt(static_cast<double>(n)); }

double bessel_ratio(double beta)
{
    if (beta < 1e-3) return 0.5 * beta - beta * beta * beta / 16.0;
    return std::cyl_bessel_i(1.0, beta) / std::cyl_bessel_i(0.0, beta);
}

double invert_bessel_ratio(double resultant)
{
    constexpr double kMaxConcentration = 500.0;
    if (resultant <= 0.0) return 0.0;
    if (resultant >= bessel_ratio(kMaxConcentration)) return kMaxConcentration;
    double lo = 0.0;
    double hi = kMaxConcentration;
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        (bessel_ratio(mid) < resultant ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

VonMisesFit vonmises_fit_moments(double mean_cos, double mean_sin)
{
    const double resultant = std::hypot(mean_cos, mean_sin);
    if (resultant >= 1.0 - 1e-12) {
        throw DegenerateState("vonmises_fit: resultant length " + std::to_string(resultant) +
                              " leaves the concentration unbounded");
    }
    return {invert_bessel_ratio(resultant), wrap_angle(std::atan2(mean_sin, mean_cos)), resultant};
}

VonMisesFit vonmises_fit(std::span<const double> angles)
{
    if (angles.size() < 100) throw DomainError("vonmises_fit: need at least 100 samples");
    double c = 0.0;
    double s = 0.0;
    for (double a : angles) {
        c += std::cos(a);
        s += std::sin(a);
    }
    const double n = static_cast<double>(angles.size());
    return vonmises_fit_moments(c / n, s / n);
}

double vonmises_density(double x, double concentration, double location)
{
    // exp(beta (cos - 1)) / (2 pi I0(beta) e^{-beta}) keeps large beta finite.
    const double scaled_i0 = std::cyl_bessel_i(0.0, concentration) * std::exp(-concentration);
    return std::exp(concentration * (std::cos(x - location) - 1.0)) / (kTwoPi * scaled_i0);
}

double histogram_ks_vonmises(std::span<const double> masses, const VonMisesFit& fit)
{
    const std::size_t bins = masses.size();
    if (bins < 8) throw DomainError("histogram_ks_vonmises: need at least 8 bins");
    constexpr int kPanels = 32;
    const double width = kTwoPi / static_cast<double>(bins);
    std::vector<double> model(bins);
    double model_total = 0.0;
    for (std::size_t j = 0; j < bins; ++j) {
        const double a = width * static_cast<double>(j);
        const double step = width / kPanels;
        double sum = 0.0;
        for (int i = 0; i < kPanels; ++i) {
            const double lo = a + step * i;
            sum += step / 6.0 *
                   (vonmises_density(lo, fit.concentration, fit.location) +
                    4.0 * vonmises_density(lo + 0.5 * step, fit.concentration, fit.location) +
                    vonmises_density(lo + step, fit.concentration, fit.location));
        }
        model[j] = sum;
        model_total += sum;
    }
    std::vector<double> gap(bins + 1, 0.0);
    for (std::size_t j = 0; j < bins; ++j) gap[j + 1] = gap[j] + masses[j] - model[j] / model_total;

    const double antimode = wrap_angle(fit.location + std::numbers::pi);
    const auto origin = static_cast<std::size_t>(std::llround(antimode / width)) % bins;
    double d = 0.0;
    for (double g : gap) d = std::max(d, std::abs(g - gap[origin]));
    return d;
}

RateFit rate_fit(std::span<const double> times, std::span<const double> values, double limit,
                 double t_lo, double t_hi)
{
    if (times.size() != values.size()) throw DomainError("rate_fit: times and values differ in length");
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi || !(times[i] > 0.0)) continue;
        const double dev = std::abs(values[i] - limit);
        if (dev < 1e-14) continue;
        xs.push_back(std::log(times[i]));
        ys.push_back(std::log(dev));
    }
    if (xs.size() < 5) {
        throw DomainError("rate_fit: " + std::to_string(xs.size()) + " usable points, need 5");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("rate_fit: window spans a single time");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = xs.size();
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - fit.intercept - fit.slope * xs[i];
        ssr += r * r;
    }
    fit.std_error = std::sqrt(ssr / (n - 2.0) / sxx);
    return fit;
}

std::optional<double> observable_value(const Checkpoint& c, Observable which)
{
    switch (which) {
    case Observable::Theta: return c.theta;
    case Observable::Alignment: return c.alignment;
    case Observable::Radius: return c.radius;
    case Observable::Scalar: return c.scalar;
    }
    return std::nullopt;
}

RateFit rate_fit(const TrajectoryRecord& record, Observable which, std::optional<double> limit,
                 double t_lo, double t_hi)
{
    std::vector<double> times;
    std::vector<double> values;
    for (const Checkpoint& c : record.checkpoints) {
        const auto v = observable_value(c, which);
        if (!v) throw DomainError("rate_fit: record lacks the requested observable");
        times.push_back(c.t);
        values.push_back(*v);
    }
    if (values.empty()) throw DomainError("rate_fit: empty record");
    if (t_hi > times.back() || t_lo < times.front()) throw DomainError("rate_fit: window outside record");
    return rate_fit(times, values, limit.value_or(values.back()), t_lo, t_hi);
}

double liminf_ratio(const TrajectoryRecord& record, double t_burnin)
{
    double lowest = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const Checkpoint& c : record.checkpoints) {
        if (c.t < t_burnin || !(c.t > 0.0)) continue;
        if (!c.radius) throw DomainError("liminf_ratio: record has no radius column");
        lowest = std::min(lowest, *c.radius / std::sqrt(c.t));
        any = true;
    }
    if (!any) throw DomainError("liminf_ratio: no checkpoints after burn-in");
    return lowest;
}

double quantile(std::vector<double> values, double p)
{
    if (values.empty()) throw DomainError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

SummaryStat summarize_values(const std::vector<double>& values)
{
    SummaryStat s;
    const MeanStderr m = mean_stderr(values);
    s.mean = m.mean;
    s.std_error = m.std_error;
    s.count = m.count;
    s.q05 = quantile(values, 0.05);
    s.q50 = quantile(values, 0.50);
    s.q95 = quantile(values, 0.95);
    return s;
}

}  // namespace

EnsembleSummary summarize(std::span<const TrajectoryRecord> records)
{
    EnsembleSummary out;
    out.trajectories = records.size();
    if (records.empty()) return out;
    const std::size_t n_checkpoints = records.front().checkpoints.size();
    for (const TrajectoryRecord& r : records) {
        if (r.checkpoints.size() != n_checkpoints) {
            throw DomainError("summarize: records disagree on the checkpoint count");
        }
    }
    const std::string& scalar_label = records.front().scalar_label;
    for (std::size_t k = 0; k < n_checkpoints; ++k) {
        CheckpointSummary cs;
        cs.t = records.front().checkpoints[k].t;
        std::map<std::string, std::vector<double>> columns;
        for (const TrajectoryRecord& r : records) {
            const Checkpoint& c = r.checkpoints[k];
            if (c.theta) columns["theta"].push_back(*c.theta);
            if (c.alignment) columns["Theta"].push_back(*c.alignment);
            if (c.radius) columns["R"].push_back(*c.radius);
            if (c.alignment && c.radius) {
                columns["martingale"].push_back(martingale_statistic(c.t, *c.alignment, *c.radius));
            }
            if (c.scalar) columns[scalar_label.empty() ? "value" : scalar_label].push_back(*c.scalar);
        }
        for (const auto& [name, values] : columns) cs.stats[name] = summarize_values(values);
        out.checkpoints.push_back(std::move(cs));
    }
    return out;
}

}  // namespace sid
