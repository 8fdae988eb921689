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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sid/errors.hpp"
#include "sid/flows.hpp"

using namespace sid;

namespace {

constexpr double kPi = std::numbers::pi;

double vector_field(FlowKind kind, double x)
{
    return kind == FlowKind::Logistic ? 0.5 * (1.0 - x * x) : -0.5 * std::sin(x);
}

// Classical RK4 with a small fixed step.
double integrate_field(FlowKind kind, double h, double x)
{
    const int steps = std::max(1, static_cast<int>(std::ceil(h / 1e-3)));
    const double dt = h / steps;
    for (int i = 0; i < steps; ++i) {
        const double k1 = vector_field(kind, x);
        const double k2 = vector_field(kind, x + 0.5 * dt * k1);
        const double k3 = vector_field(kind, x + 0.5 * dt * k2);
        const double k4 = vector_field(kind, x + dt * k3);
        x += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return x;
}

}  // namespace

TEST_CASE("flow fixed points and closed forms")
{
    for (double h : {0.0, 0.3, 5.0}) {
        CHECK(flow(FlowKind::Logistic, h, 1.0) == 1.0);
        CHECK(flow(FlowKind::Logistic, h, -1.0) == -1.0);
        CHECK(flow(FlowKind::Pendulum, h, 0.0) == 0.0);
        CHECK(flow(FlowKind::Pendulum, h, kPi) == kPi);
        CHECK(flow(FlowKind::Logistic, h, 0.0) == doctest::Approx(std::tanh(h / 2)).epsilon(1e-15));
    }
    CHECK(flow(FlowKind::Pendulum, 2.0, kPi / 2) == doctest::Approx(2.0 * std::atan(std::exp(-1.0))));
    CHECK_THROWS_AS(flow(FlowKind::Logistic, 1.0, 1.5), DomainError);
    CHECK_THROWS_AS(flow(FlowKind::Pendulum, 1.0, 4.0), DomainError);
    CHECK_THROWS_AS(flow(FlowKind::Logistic, -0.1, 0.0), DomainError);
}

TEST_CASE("closed forms agree with a fine-step integrator")
{
    for (FlowKind kind : {FlowKind::Logistic, FlowKind::Pendulum}) {
        const double edge = kind == FlowKind::Logistic ? 0.99 : 3.0;
        for (double x = -edge; x <= edge; x += edge / 8) {
            for (double h : {0.01, 0.5, 2.0, 6.0}) {
                CHECK(std::abs(flow(kind, h, x) - integrate_field(kind, h, x)) < 1e-10);
            }
        }
    }
}

TEST_CASE("flows are semigroups and order preserving")
{
    for (FlowKind kind : {FlowKind::Logistic, FlowKind::Pendulum}) {
        double previous = -INFINITY;
        for (double x = -0.95; x <= 0.95; x += 0.05) {
            const double y = flow(kind, 1.7, x);
            CHECK(y > previous);
            previous = y;
            CHECK(std::abs(flow(kind, 0.6, flow(kind, 1.1, x)) - y) <= 1e-10);
        }
    }
    for (double x = -0.99; x <= 1.0; x += 0.01) CHECK(flow(FlowKind::Logistic, 50.0, x) > 1.0 - 1e-8);
}

TEST_CASE("pseudo gap")
{
    std::vector<PathSample> orbit;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.01 * i;
        orbit.push_back({t, flow(FlowKind::Logistic, t, -0.4)});
    }
    CHECK(pseudo_gap(orbit, FlowKind::Logistic, 0.0, 2.0) < 1e-14);
    CHECK(pseudo_gap(orbit, FlowKind::Logistic, 0.5, 1.0) < 1e-14);

    std::vector<PathSample> still;
    for (int i = 0; i <= 100; ++i) still.push_back({0.01 * i, 0.0});
    CHECK(pseudo_gap(still, FlowKind::Logistic, 0.0, 1.0) == doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
    CHECK(pseudo_gap(still, FlowKind::Pendulum, 0.0, 1.0) == 0.0);

    std::vector<PathSample> kicked = orbit;
    kicked[150].value += 0.1;
    CHECK(pseudo_gap(kicked, FlowKind::Logistic, 0.0, 2.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(pseudo_gap(kicked, FlowKind::Logistic, 0.0, 1.0) < 1e-14);

    CHECK_THROWS_AS(pseudo_gap(orbit, FlowKind::Logistic, 0.005, 1.0), DomainError);
    CHECK_THROWS_AS(pseudo_gap(orbit, FlowKind::Logistic, 1.5, 1.0), DomainError);
}

TEST_CASE("noise condition classifier")
{
    struct Case {
        NoiseSchedule eps;
        NoiseCondition expected;
    };
    const std::vector<Case> cases{
        {NoiseSchedule::power(1.0, 1.0), NoiseCondition::Satisfied},
        {NoiseSchedule::power(5.0, 0.2), NoiseCondition::Satisfied},
        {NoiseSchedule::exponential(1.0, 0.1), NoiseCondition::Satisfied},
        {NoiseSchedule::log_power(1.0, 2.0), NoiseCondition::Satisfied},
        {NoiseSchedule::log_power(1.0, 1.0), NoiseCondition::Violated},
        {NoiseSchedule::log_power(1.0, 0.5), NoiseCondition::Violated},
        {NoiseSchedule::constant(1.0), NoiseCondition::Violated},
        {NoiseSchedule::power(1.0, 0.0), NoiseCondition::Violated},
    };
    for (const Case& c : cases) {
        INFO(c.eps.describe());
        CHECK(classify_noise_condition(c.eps).verdict == c.expected);
    }
    const NoiseClassification flat = classify_noise_condition(NoiseSchedule::constant(1.0));
    CHECK(flat.numeric_divergence);
    CHECK(flat.numeric_integral == doctest::Approx(1e6 * std::exp(-1.0)).epsilon(1e-6));
    const NoiseClassification fast = classify_noise_condition(NoiseSchedule::power(1.0, 1.0));
    CHECK_FALSE(fast.numeric_divergence);
    CHECK(fast.numeric_integral == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));

    CHECK_THROWS_AS(classify_noise_condition(NoiseSchedule::custom("x", [](double) { return 1.0; })),
                    UnsupportedFamily);
}

TEST_CASE("pendulum contraction bound")
{
    std::vector<double> grid;
    for (int i = -100; i <= 100; ++i) grid.push_back(i * kPi / 200);
    for (double window : {0.1, 1.0, 10.0}) {
        const ContractionReport report = contraction_bound_check(grid, window, 1.0 / kPi);
        CHECK(report.holds);
        CHECK(report.points == grid.size());
        CHECK(report.worst_ratio <= 1.0);
    }
    const std::vector<double> origin{0.0};
    CHECK(contraction_bound_check(origin, 1.0).holds);

    // |sin x| >= (2/pi)|x| only buys rate 1/pi for x' = -sin(x)/2.
    const std::vector<double> edge{kPi / 2};
    const ContractionReport literal = contraction_bound_check(edge, 1.0);
    CHECK_FALSE(literal.holds);
    CHECK(literal.worst_ratio == doctest::Approx(flow(FlowKind::Pendulum, 1.0, kPi / 2) /
                                                 (std::exp(-2.0 / kPi) * kPi / 2)));
    CHECK_FALSE(contraction_bound_check(grid, 1.0, 0.7).holds);

    const std::vector<double> outside{2.0};
    CHECK_THROWS_AS(contraction_bound_check(outside, 1.0), DomainError);
}
