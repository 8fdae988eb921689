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

#include "sid/errors.hpp"
#include "sid/random_stream.hpp"
#include "sid/sphere_geometry.hpp"

using namespace sid;

namespace {

double max_abs_diff(const Vector& a, const Vector& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

Vector random_vector(std::size_t dim, RandomStream& rng)
{
    Vector v(dim);
    for (double& x : v) x = 3.0 * rng.normal();
    return v;
}

}  // namespace

TEST_CASE("project_tangent examples")
{
    const SpherePoint e1 = SpherePoint::basis(3, 0);
    CHECK(max_abs_diff(project_tangent(e1, Vector::basis(3, 1)), Vector::basis(3, 1)) == 0.0);
    CHECK(norm(project_tangent(e1, Vector::basis(3, 0))) == 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    const SpherePoint x = renormalize(Vector{r, r, 0.0});
    CHECK(max_abs_diff(project_tangent(x, Vector{1.0, 0.0, 0.0}), Vector{0.5, -0.5, 0.0}) < 1e-15);
    CHECK_THROWS_AS(project_tangent(e1, Vector{1.0, 0.0}), DimensionMismatch);
}

TEST_CASE("renormalize examples")
{
    CHECK(renormalize(Vector{2.0, 0.0, 0.0}).vec() == Vector{1.0, 0.0, 0.0});
    const SpherePoint p = renormalize(Vector{3.0, 4.0});
    CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(renormalize(Vector{0.0, 0.0, 0.0}), DegenerateState);
    CHECK_THROWS_AS(renormalize(Vector{1e-14, 0.0}), DegenerateState);
}

TEST_CASE("tangent projection is orthogonal and idempotent")
{
    RandomStream rng(3);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            const SpherePoint x = sample_uniform(n, rng);
            const Vector v = random_vector(n + 1, rng);
            const Vector p = project_tangent(x, v);
            CHECK(std::abs(dot(p, x.vec())) < 1e-12);
            CHECK(max_abs_diff(project_tangent(x, p), p) < 1e-14);
        }
    }
}

TEST_CASE("renormalized points are unit and parallel to the input")
{
    RandomStream rng(4);
    for (int trial = 0; trial < 500; ++trial) {
        const Vector v = random_vector(4, rng);
        const SpherePoint p = renormalize(v);
        CHECK(std::abs(norm(p.vec()) - 1.0) < 1e-15);
        CHECK(dot(p.vec(), v) == doctest::Approx(norm(v)).epsilon(1e-14));
    }
}

TEST_CASE("uniform samples are unit, deterministic and centred")
{
    RandomStream a(9), b(9);
    for (int i = 0; i < 100; ++i) CHECK(sample_uniform(2, a) == sample_uniform(2, b));

    RandomStream rng(10);
    const int count = 100000;
    Vector mean(3);
    for (int i = 0; i < count; ++i) {
        const SpherePoint p = sample_uniform(2, rng);
        REQUIRE(std::abs(norm(p.vec()) - 1.0) < 1e-12);
        mean += p.vec();
    }
    mean *= 1.0 / count;
    CHECK(norm(mean) < 0.02);
}

TEST_CASE("chord and geodesic agree")
{
    RandomStream rng(12);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 300; ++trial) {
            const SpherePoint x = sample_uniform(n, rng);
            const SpherePoint y = sample_uniform(n, rng);
            const Vector d = x.vec() - y.vec();
            CHECK(std::abs(dot(d, d) + 2.0 * std::cos(geodesic_distance(x, y)) - 2.0) < 1e-10);
        }
    }
    const SpherePoint e1 = SpherePoint::basis(2, 0);
    const SpherePoint minus = renormalize(Vector{-1.0, 0.0});
    CHECK(geodesic_distance(e1, e1) == 0.0);
    CHECK(geodesic_distance(e1, minus) == doctest::Approx(std::numbers::pi));
    CHECK(clamped_cosine(e1, e1) == 1.0);
}
