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
#include "sid/integrators.hpp"
#include "sid/ensemble.hpp"
#include "sid/observables.hpp"

using namespace sid;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> vonmises_sample(std::size_t count, double beta, double location, RandomStream& rng)
{
    std::vector<double> out;
    out.reserve(count);
    while (out.size() < count) {
        const double x = 2.0 * kPi * rng.uniform();
        if (rng.uniform() < std::exp(beta * (std::cos(x - location) - 1.0))) out.push_back(x);
    }
    return out;
}

TrajectoryRecord radius_record(double (*radius)(double))
{
    TrajectoryRecord r;
    for (double t = 1.0; t <= 1000.0; t *= 1.1) {
        Checkpoint c;
        c.t = t;
        c.radius = radius(t);
        r.checkpoints.push_back(c);
    }
    return r;
}

}  // namespace

TEST_CASE("polar decomposition examples")
{
    const SpherePoint x = SpherePoint::basis(3, 0);
    const PolarCoordinates along = polar_decompose(x, Vector{3.0, 0.0, 0.0});
    CHECK(along.alignment == 1.0);
    CHECK(along.radius == 3.0);
    CHECK(along.direction == x);

    const PolarCoordinates rest = polar_decompose(x, Vector(3));
    CHECK(rest.alignment == 1.0);
    CHECK(rest.radius == 0.0);
    CHECK(rest.direction == x);

    const PolarCoordinates across = polar_decompose(x, Vector{0.0, 0.0, 2.0});
    CHECK(across.alignment == 0.0);
    CHECK(across.radius == 2.0);
    CHECK(across.direction == SpherePoint::basis(3, 2));

    CHECK_THROWS_AS(polar_decompose(x, Vector(2)), DimensionMismatch);

    RandomStream rng(41);
    for (int i = 0; i < 200; ++i) {
        const SpherePoint p = sample_uniform(2, rng);
        const Vector u{rng.normal(), rng.normal(), rng.normal()};
        const PolarCoordinates pc = polar_decompose(p, u);
        CHECK(std::abs(pc.alignment) <= 1.0);
        CHECK(pc.radius >= 0.0);
        CHECK(std::abs(norm(pc.direction.vec()) - 1.0) < 1e-12);
    }
}

TEST_CASE("martingale statistic")
{
    std::vector<Checkpoint> start(5);
    for (Checkpoint& c : start) {
        c.alignment = 1.0;
        c.radius = 0.0;
    }
    const MeanStderr m = martingale_stat(start);
    CHECK(m.mean == 1.0);
    CHECK(m.std_error == 0.0);
    CHECK(m.count == 5);
    CHECK(martingale_statistic(1.0, 0.5, 2.0, 0.5) == doctest::Approx(std::exp(2.0 - 2.0 * (1.0 + 2.0))));

    start[1].t = 0.1;
    CHECK_THROWS_AS(martingale_stat(start), DomainError);
    CHECK_THROWS_AS(martingale_stat(std::span<const Checkpoint>{}), DomainError);
}

TEST_CASE("martingale identity on S^n with the n/4 quadratic term")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        SimConfig cfg;
        SphereProcess p;
        p.n = n;
        cfg.process = p;
        cfg.t_end = 0.5;
        cfg.checkpoint_times = {0.25, 0.5};
        cfg.seed = 42 + n;
        const auto records = run_records(cfg, 4000, 1);
        for (std::size_t k = 0; k < 2; ++k) {
            std::vector<Checkpoint> slice;
            for (const auto& r : records) slice.push_back(r.checkpoints[k]);
            const MeanStderr m = martingale_stat(slice, 0.25 * static_cast<double>(n));
            INFO("n=" << n << " t=" << slice.front().t << " mean=" << m.mean << " se=" << m.std_error);
            CHECK(std::abs(m.mean - 1.0) <= 3.0 * m.std_error);
        }
    }
}

TEST_CASE("occupation histogram")
{
    const std::vector<PathSample> still{{0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}};
    const auto one = occupation_histogram(still, 2.0, 16);
    CHECK(one[static_cast<std::size_t>(1.0 / (2 * kPi) * 16)] == 1.0);

    std::vector<PathSample> sweep;
    for (int i = 0; i <= 1000; ++i) sweep.push_back({2 * kPi * i / 1000.0, 2 * kPi * i / 1000.0});
    const auto flat = occupation_histogram(sweep, 2 * kPi, 16);
    double total = 0.0;
    for (double m : flat) {
        CHECK(std::abs(m - 1.0 / 16) <= 2.0 / 16);
        total += m;
    }
    CHECK(total == doctest::Approx(1.0));

    RandomStream rng(43);
    std::vector<PathSample> noisy;
    double t = 0.0;
    for (int i = 0; i < 500; ++i) {
        noisy.push_back({t, 10.0 * rng.normal()});
        t += rng.uniform();
    }
    double sum = 0.0;
    for (double m : occupation_histogram(noisy, t, 32)) sum += m;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(occupation_histogram(noisy, t, 4), DomainError);
    CHECK(wrap_angle(-0.5) == doctest::Approx(2 * kPi - 0.5));
    CHECK(wrap_angle(4 * kPi) == 0.0);
}

TEST_CASE("circle KS statistic")
{
    for (std::size_t n : {10, 100, 1000}) {
        std::vector<double> grid;
        for (std::size_t i = 1; i <= n; ++i) grid.push_back((static_cast<double>(i) - 0.5) / n * 2 * kPi);
        CHECK(ks_uniform_circle(grid) == doctest::Approx(0.5 / n).epsilon(1e-9));
    }
    // With the origin in the widest gap, a point mass sits mid-circle.
    const std::vector<double> same(50, 1.0);
    CHECK(ks_uniform_circle(same) == doctest::Approx(0.5));
    CHECK(ks_critical_5pct(100) == doctest::Approx(0.136));

    RandomStream rng(44);
    int accepted = 0;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> u(1000);
        for (double& x : u) x = 2 * kPi * rng.uniform();
        if (ks_uniform_circle(u) < ks_critical_5pct(u.size())) ++accepted;
    }
    INFO("accepted " << accepted << " of " << reps);
    CHECK(accepted >= 0.92 * reps);
}

TEST_CASE("von Mises fit")
{
    CHECK(bessel_ratio(1e-4) == doctest::Approx(5e-5).epsilon(1e-6));
    CHECK(invert_bessel_ratio(bessel_ratio(2.0)) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(invert_bessel_ratio(0.0) == 0.0);

    RandomStream rng(45);
    std::vector<double> uniform(10000);
    for (double& x : uniform) x = 2 * kPi * rng.uniform();
    const VonMisesFit flat = vonmises_fit(uniform);
    CHECK(flat.resultant < 0.05);
    CHECK(flat.concentration < 0.1);

    const auto sample = vonmises_sample(100000, 2.0, 1.0, rng);
    const VonMisesFit fit = vonmises_fit(sample);
    CHECK(fit.concentration >= 1.9);
    CHECK(fit.concentration <= 2.1);
    CHECK(std::abs(fit.location - 1.0) <= 0.05);

    std::vector<double> turned = sample;
    for (double& x : turned) x += 2.5;
    const VonMisesFit rotated = vonmises_fit(turned);
    CHECK(rotated.concentration == doctest::Approx(fit.concentration).epsilon(1e-9));
    CHECK(wrap_angle(rotated.location - fit.location) == doctest::Approx(2.5).epsilon(1e-9));

    // The sampler itself against the density, bin by bin.
    std::vector<double> path_hist(32, 0.0);
    for (double x : sample) path_hist[static_cast<std::size_t>(wrap_angle(x) / (2 * kPi) * 32)] += 1.0 / sample.size();
    CHECK(histogram_ks_vonmises(path_hist, {2.0, 1.0, bessel_ratio(2.0)}) < 0.01);

    std::vector<double> exact(32);
    for (std::size_t j = 0; j < 32; ++j) {
        const double lo = 2 * kPi * j / 32;
        double sum = 0.0;
        for (int i = 0; i < 1000; ++i) sum += vonmises_density(lo + (i + 0.5) * 2 * kPi / 32000, 3.0, 4.0);
        exact[j] = sum * 2 * kPi / 32000;
    }
    CHECK(histogram_ks_vonmises(exact, {3.0, 4.0, bessel_ratio(3.0)}) < 1e-6);

    CHECK_THROWS_AS(vonmises_fit_moments(1.0, 0.0), DegenerateState);
    CHECK_THROWS_AS(vonmises_fit(std::vector<double>(50, 0.0)), DomainError);
}

TEST_CASE("rate fit")
{
    std::vector<double> times;
    std::vector<double> power;
    std::vector<double> logged;
    std::vector<double> flat;
    for (double t = 100.0; t <= 1e6; t *= 1.1) {
        times.push_back(t);
        power.push_back(1.0 / std::sqrt(t));
        logged.push_back(std::log(t) / std::sqrt(t));
        flat.push_back(0.3);
    }
    const RateFit exact = rate_fit(times, power, 0.0, 100.0, 1e6);
    CHECK(exact.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(exact.std_error < 1e-10);
    const RateFit biased = rate_fit(times, logged, 0.0, 100.0, 1e6);
    CHECK(biased.slope > -0.45);
    CHECK(biased.slope < -0.35);
    CHECK(std::abs(rate_fit(times, flat, 0.0, 100.0, 1e6).slope) < 1e-12);
    CHECK_THROWS_AS(rate_fit(times, flat, 0.3, 100.0, 1e6), DomainError);
    CHECK_THROWS_AS(rate_fit(times, power, 0.0, 100.0, 120.0), DomainError);
}

TEST_CASE("liminf ratio and quantile")
{
    CHECK(liminf_ratio(radius_record([](double t) { return t; }), 4.0) >= 2.0);
    CHECK(liminf_ratio(radius_record([](double t) { return t; }), 4.0) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(liminf_ratio(radius_record([](double t) { return std::sqrt(t); }), 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(liminf_ratio(radius_record([](double t) { return t; }), 5000.0), DomainError);

    CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.5) == 2.5);
    CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.0) == 1.0);
    CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 1.0) == 4.0);
    CHECK(quantile({7.0}, 0.3) == 7.0);
    CHECK_THROWS_AS(quantile({}, 0.5), DomainError);
}
