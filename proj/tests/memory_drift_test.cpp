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
#include "sid/memory_drift.hpp"
#include "sid/random_stream.hpp"

using namespace sid;

namespace {

constexpr double kPi = std::numbers::pi;

// Angle path of a driftless random walk with step h.
std::vector<PathSample> random_path(RandomStream& rng, std::size_t steps, double h)
{
    std::vector<PathSample> path;
    double theta = 2.0 * kPi * rng.uniform();
    for (std::size_t i = 0; i <= steps; ++i) {
        path.push_back({static_cast<double>(i) * h, theta});
        theta += std::sqrt(h) * rng.normal();
    }
    return path;
}

Vector rotate(const std::vector<std::vector<double>>& q, const Vector& v)
{
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += q[i][j] * v[j];
    }
    return out;
}

}  // namespace

TEST_CASE("circle drift examples")
{
    FourierMemory mem({{1, 1.0}});
    mem.accumulate(0.0, 1.0);
    mem.accumulate(0.0, 1.0);
    CHECK(mem.cos_sums()[0] == 2.0);
    CHECK(mem.sin_sums()[0] == 0.0);
    CHECK(circle_drift(mem, kPi / 2, WeightSchedule::raw(-1.0)) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(circle_drift(mem, 0.0, WeightSchedule::raw(-1.0)) == 0.0);
}

TEST_CASE("circle accumulate examples")
{
    FourierMemory one = circle_accumulate(FourierMemory({{1, 1.0}}), 0.0, 1.0);
    CHECK(one.cos_sums()[0] == 1.0);
    CHECK(one.sin_sums()[0] == 0.0);
    CHECK(one.elapsed() == 1.0);

    FourierMemory two = circle_accumulate(FourierMemory({{2, 1.0}}), kPi / 2, 0.5);
    CHECK(two.cos_sums()[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(std::abs(two.sin_sums()[0]) < 1e-15);
    CHECK_THROWS(circle_accumulate(FourierMemory({{1, 1.0}}), 0.0, 0.0));
}

TEST_CASE("accumulators reproduce the Riemann sum")
{
    RandomStream rng(21);
    const double h = 1e-3;
    const auto path = random_path(rng, 5000, h);
    FourierMemory mem({{1, 1.0}, {3, 0.5}});
    double a1 = 0.0, b3 = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        mem.accumulate(path[i].value, h);
        a1 += h * std::cos(path[i].value);
        b3 += h * std::sin(3.0 * path[i].value);
    }
    CHECK(std::abs(mem.cos_sums()[0] - a1) < 1e-12 * 5000);
    CHECK(std::abs(mem.sin_sums()[1] - b3) < 1e-12 * 5000);
    CHECK(mem.elapsed() == doctest::Approx(5.0));
    for (std::size_t i = 0; i < mem.modes().size(); ++i) {
        CHECK(std::hypot(mem.cos_sums()[i], mem.sin_sums()[i]) <= mem.elapsed() + 1e-12);
    }
}

TEST_CASE("brute force circle examples")
{
    const std::vector<FourierMode> modes{{1, 1.0}};
    const std::vector<PathSample> zero{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    CHECK(brute_force_circle(zero, 0.0, modes, WeightSchedule::raw(-1.0)) == 0.0);
    CHECK(brute_force_circle(zero, kPi / 2, modes, WeightSchedule::raw(-1.0)) ==
          doctest::Approx(-2.0).epsilon(1e-15));
    CHECK_THROWS(brute_force_circle(std::vector<PathSample>{}, 0.0, modes, WeightSchedule::raw(-1.0)));
}

TEST_CASE("circle accumulators match the brute-force oracle at every step")
{
    RandomStream rng(22);
    const double h = 1e-3;
    const std::vector<FourierMode> modes{{1, -0.7}, {2, 0.4}, {3, 1.3}};
    const WeightSchedule schedules[] = {WeightSchedule::raw(-1.0), WeightSchedule::normalized(-3.0, 0.0),
                                        WeightSchedule::weighted(-1.0, GrowthFunction::logarithmic(1.0), 0.0)};
    for (const WeightSchedule& sched : schedules) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto path = random_path(rng, 1000, h);
            FourierMemory mem(modes);
            double worst = 0.0;
            for (std::size_t k = 1; k < path.size(); ++k) {
                mem.accumulate(path[k - 1].value, h);
                const double fast = circle_drift(mem, path[k].value, sched);
                const double slow = brute_force_circle(std::span(path).first(k + 1), path[k].value, modes, sched);
                worst = std::max(worst, std::abs(fast - slow));
            }
            CHECK(worst <= 1e-10);
        }
    }
}

TEST_CASE("circle drift depends only on angle differences")
{
    RandomStream rng(23);
    const double h = 1e-2;
    const auto path = random_path(rng, 400, h);
    const std::vector<FourierMode> modes{{1, 1.0}, {2, -0.5}};
    FourierMemory plain(modes), shifted(modes);
    const double phi = 1.234;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        plain.accumulate(path[i].value, h);
        shifted.accumulate(path[i].value + phi, h);
    }
    const WeightSchedule sched = WeightSchedule::raw(-1.0);
    const double theta = path.back().value;
    CHECK(circle_drift(shifted, theta + phi, sched) ==
          doctest::Approx(circle_drift(plain, theta, sched)).epsilon(1e-10));
}

TEST_CASE("empty history exerts no force at the origin")
{
    FourierMemory mem({{1, 1.0}});
    CHECK(circle_drift(mem, 0.0, WeightSchedule::raw(-1.0)) == 0.0);
}

TEST_CASE("weight schedules")
{
    CHECK(WeightSchedule::raw(-2.0).weight(0.0) == -2.0);
    CHECK(WeightSchedule::normalized(-3.0).weight(2.0) == -1.5);
    CHECK_THROWS_AS(WeightSchedule::normalized(-3.0).weight(0.0), UndefinedWeight);
    const WeightSchedule w = WeightSchedule::weighted(-1.0, GrowthFunction::logarithmic(1.0));
    CHECK(w.weight(std::exp(1.0) - 1.0) == doctest::Approx(-1.0 / (std::exp(1.0) - 1.0)));
    CHECK_THROWS_AS(w.weight(0.0), UndefinedWeight);
    CHECK_FALSE(w.warning().has_value());
    CHECK(WeightSchedule::weighted(-1.0, GrowthFunction::power(0.5)).warning().has_value());

    const WeightSchedule late = WeightSchedule::normalized(-1.0, 1.0);
    CHECK_FALSE(late.active(0.5));
    CHECK(late.active(1.0));
    FourierMemory mem({{1, 1.0}});
    mem.accumulate(0.0, 0.5);
    CHECK(circle_drift(mem, 1.0, late) == 0.0);
}

TEST_CASE("sphere drift examples")
{
    const SpherePoint x = SpherePoint::basis(3, 0);
    SphereMemory collinear(Vector{2.0, 0.0, 0.0}, 2.0);
    CHECK(norm(sphere_drift(collinear, x, WeightSchedule::raw(-1.0))) == 0.0);
    CHECK(norm(sphere_drift(collinear, x, WeightSchedule::raw(5.0))) == 0.0);

    SphereMemory ortho(Vector::basis(3, 1), 1.0);
    CHECK(sphere_drift(ortho, x, WeightSchedule::raw(-1.0)) == Vector::basis(3, 1));
    // Drift coefficient has the sign of -a.
    CHECK(sphere_drift(ortho, x, WeightSchedule::raw(2.0))[1] == -2.0);
    CHECK_THROWS_AS(sphere_drift(SphereMemory(2), x, WeightSchedule::raw(-1.0)), DimensionMismatch);
}

TEST_CASE("sphere memory matches the brute-force oracle and is tangent")
{
    RandomStream rng(24);
    const double h = 1e-3;
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<SpherePoint> history;
        std::vector<double> times;
        SpherePoint x = sample_uniform(n, rng);
        SphereMemory mem(n + 1);
        double worst = 0.0, tangent = 0.0;
        for (int k = 0; k < 600; ++k) {
            history.push_back(x);
            times.push_back(k * h);
            const Vector fast = sphere_drift(mem, x, WeightSchedule::raw(-1.0));
            const Vector slow = brute_force_sphere(times, history, x, WeightSchedule::raw(-1.0));
            for (std::size_t j = 0; j <= n; ++j) worst = std::max(worst, std::abs(fast[j] - slow[j]));
            tangent = std::max(tangent, std::abs(dot(fast, x.vec())));
            mem.accumulate(x, h);
            Vector next = x.vec();
            for (double& v : next) v += 0.05 * rng.normal();
            x = renormalize(std::move(next));
        }
        CHECK(worst <= 1e-10);
        CHECK(tangent <= 1e-12);
        CHECK(norm(mem.sum) <= mem.elapsed + 1e-12);
    }
}

TEST_CASE("sphere drift commutes with rotations")
{
    RandomStream rng(25);
    const double c = std::cos(0.7), s = std::sin(0.7);
    const std::vector<std::vector<double>> q{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}};
    SphereMemory mem(3), rotated(3);
    SpherePoint x = sample_uniform(2, rng);
    for (int k = 0; k < 300; ++k) {
        mem.accumulate(x, 0.01);
        rotated.accumulate(renormalize(rotate(q, x.vec())), 0.01);
        x = sample_uniform(2, rng);
    }
    const Vector a = rotate(q, sphere_drift(mem, x, WeightSchedule::raw(-1.0)));
    const Vector b = sphere_drift(rotated, renormalize(rotate(q, x.vec())), WeightSchedule::raw(-1.0));
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-10);
}
