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

#include "sid/sphere_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sid/errors.hpp"

namespace sid {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op)
{
    if (a != b) {
        throw DimensionMismatch(std::string(op) + ": dimension " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

}  // namespace

Vector Vector::basis(std::size_t dim, std::size_t i)
{
    if (i >= dim) {
        throw DimensionMismatch("basis index " + std::to_string(i) + " out of range for dimension " +
                                std::to_string(dim));
    }
    Vector e(dim);
    e[i] = 1.0;
    return e;
}

Vector& Vector::operator+=(const Vector& other)
{
    require_same_dim(size(), other.size(), "Vector::operator+=");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& other)
{
    require_same_dim(size(), other.size(), "Vector::operator-=");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

Vector& Vector::operator*=(double scale) noexcept
{
    for (double& c : coords_) c *= scale;
    return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(Vector v, double scale) noexcept { return v *= scale; }
Vector operator*(double scale, Vector v) noexcept { return v *= scale; }

double dot(std::span<const double> a, std::span<const double> b) noexcept
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double dot(const Vector& a, const Vector& b)
{
    require_same_dim(a.size(), b.size(), "dot");
    return dot(a.span(), b.span());
}

double norm(const Vector& v) noexcept { return std::sqrt(dot(v.span(), v.span())); }

SpherePoint SpherePoint::basis(std::size_t ambient_dim, std::size_t i)
{
    return SpherePoint(Vector::basis(ambient_dim, i));
}

Vector project_tangent(const SpherePoint& x, const Vector& v)
{
    require_same_dim(x.ambient_dim(), v.size(), "project_tangent");
    const double radial = dot(x.vec(), v);
    Vector out = v;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= radial * x[i];
    return out;
}

SpherePoint renormalize(Vector v)
{
    const double length = norm(v);
    if (!(length >= kRenormalizeFloor)) {
        throw DegenerateState("renormalize: vector norm " + std::to_string(length) +
                              " below floor");
    }
    for (double& c : v) c /= length;
    return SpherePoint(std::move(v));
}

SpherePoint sample_uniform(std::size_t n, RandomStream& rng)
{
    if (n < 1) throw DomainError("sample_uniform: sphere dimension must be >= 1");
    Vector v(n + 1);
    // Gaussian vectors are isotropic; an all-zero draw is redrawn.
    do {
        for (double& c : v) c = rng.normal();
    } while (norm(v) < kRenormalizeFloor);
    return renormalize(std::move(v));
}

double clamped_cosine(const SpherePoint& x, const SpherePoint& y)
{
    return std::clamp(dot(x.vec(), y.vec()), -1.0, 1.0);
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y)
{
    return std::acos(clamped_cosine(x, y));
}

}  // namespace sid
