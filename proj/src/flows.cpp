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

#include "sid/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quadrature.hpp"
#include "sid/errors.hpp"

namespace sid {

double flow(FlowKind kind, double h, double x)
{
    if (!(h >= 0.0)) throw DomainError("flow: negative time");
    if (kind == FlowKind::Logistic) {
        if (!(std::abs(x) <= 1.0)) throw DomainError("logistic flow: x outside [-1, 1]");
        if (std::abs(x) == 1.0) return x;
        return std::tanh(0.5 * h + std::atanh(x));
    }
    if (!(std::abs(x) <= std::numbers::pi)) throw DomainError("pendulum flow: x outside [-pi, pi]");
    if (std::abs(x) == std::numbers::pi) return x;
    return 2.0 * std::atan(std::exp(-0.5 * h) * std::tan(0.5 * x));
}

double pseudo_gap(std::span<const PathSample> path, FlowKind kind, double t, double window)
{
    constexpr double kTimeSlack = 1e-9;
    if (!(window >= 0.0)) throw DomainError("pseudo_gap: negative window");
    const auto start = std::find_if(path.begin(), path.end(),
                                    [&](const PathSample& s) { return s.t >= t - kTimeSlack; });
    if (start == path.end() || std::abs(start->t - t) > kTimeSlack * std::max(1.0, t) ||
        path.back().t < t + window - kTimeSlack) {
        throw DomainError("pseudo_gap: path does not cover [" + std::to_string(t) + ", " +
                          std::to_string(t + window) + "]");
    }
    const double origin = start->value;
    double gap = 0.0;
    for (auto it = start; it != path.end() && it->t <= t + window + kTimeSlack; ++it) {
        gap = std::max(gap, std::abs(it->value - flow(kind, std::max(0.0, it->t - start->t), origin)));
    }
    return gap;
}

NoiseClassification classify_noise_condition(const NoiseSchedule& eps)
{
    NoiseCondition verdict = NoiseCondition::Violated;
    switch (eps.family()) {
    case NoiseSchedule::Family::Power:
    case NoiseSchedule::Family::Exponential:
        verdict = eps.exponent() > 0.0 ? NoiseCondition::Satisfied : NoiseCondition::Violated;
        break;
    case NoiseSchedule::Family::LogPower:
        verdict = eps.exponent() > 1.0 ? NoiseCondition::Satisfied : NoiseCondition::Violated;
        break;
    case NoiseSchedule::Family::Constant: verdict = NoiseCondition::Violated; break;
    case NoiseSchedule::Family::Custom:
        throw UnsupportedFamily("classify_noise_condition: " + eps.describe() + " is not on the menu");
    }

    constexpr double kHorizon = 1e6;
    auto integrand = [&](double t) {
        const double e = eps(t);
        return e > 0.0 ? std::exp(-1.0 / e) : 0.0;
    };
    // Decade panels keep the quadrature resolved near the origin.
    double integral = detail::integrate(integrand, 0.0, 1.0, 1e-8);
    for (double lo = 1.0; lo < kHorizon; lo *= 10.0) integral += detail::integrate(integrand, lo, lo * 10.0, 1e-8);
    const double tail = kHorizon * integrand(kHorizon);
    return {verdict, integral, tail, tail > 0.0 && tail >= 0.5 * integral};
}

ContractionReport contraction_bound_check(std::span<const double> xs, double window, double rate)
{
    ContractionReport report;
    const double factor = std::exp(-rate * window);
    for (double x : xs) {
        if (!(std::abs(x) <= 0.5 * std::numbers::pi + 1e-15)) {
            throw DomainError("contraction_bound_check: sample outside [-pi/2, pi/2]");
        }
        const double image = std::abs(flow(FlowKind::Pendulum, window, x));
        const double bound = factor * std::abs(x);
        if (image > bound) report.holds = false;
        if (x != 0.0) report.worst_ratio = std::max(report.worst_ratio, image / bound);
        ++report.points;
    }
    return report;
}

}  // namespace sid
