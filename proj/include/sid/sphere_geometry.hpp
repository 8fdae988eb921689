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
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "sid/random_stream.hpp"

namespace sid {

/// Ambient vector in R^{n+1}.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
    Vector(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) {}

    /// Canonical basis vector e_i (zero-based).
    static Vector basis(std::size_t dim, std::size_t i);

    std::size_t size() const noexcept { return coords_.size(); }
    bool empty() const noexcept { return coords_.empty(); }

    double& operator[](std::size_t i) noexcept { return coords_[i]; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }

    std::span<double> span() noexcept { return coords_; }
    std::span<const double> span() const noexcept { return coords_; }
    const std::vector<double>& coords() const noexcept { return coords_; }

    auto begin() noexcept { return coords_.begin(); }
    auto end() noexcept { return coords_.end(); }
    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    Vector& operator+=(const Vector& other);
    Vector& operator-=(const Vector& other);
    Vector& operator*=(double scale) noexcept;

    bool operator==(const Vector&) const = default;

private:
    std::vector<double> coords_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(Vector v, double scale) noexcept;
Vector operator*(double scale, Vector v) noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double dot(const Vector& a, const Vector& b);
double norm(const Vector& v) noexcept;

/// Unit vector of R^{n+1}, i.e. a point of S^n. The only ways in are
/// renormalize(), sample_uniform() and basis(), all of which leave the norm
/// within 1e-12 of one.
class SpherePoint {
public:
    static SpherePoint basis(std::size_t ambient_dim, std::size_t i);

    const Vector& vec() const noexcept { return v_; }
    std::size_t ambient_dim() const noexcept { return v_.size(); }
    /// Intrinsic dimension n of S^n.
    std::size_t sphere_dim() const noexcept { return v_.size() - 1; }
    double operator[](std::size_t i) const noexcept { return v_[i]; }

    bool operator==(const SpherePoint&) const = default;

    /// Hands the coordinate buffer back for reuse; leaves *this empty.
    Vector into_vector() && noexcept { return std::move(v_); }

private:
    explicit SpherePoint(Vector v) : v_(std::move(v)) {}
    friend SpherePoint renormalize(Vector v);

    Vector v_;
};

/// Vectors shorter than this have no usable direction.
inline constexpr double kRenormalizeFloor = 1e-13;

/// v - <x, v> x.
Vector project_tangent(const SpherePoint& x, const Vector& v);

/// v / |v|; throws DegenerateState when |v| < kRenormalizeFloor.
SpherePoint renormalize(Vector v);

/// Uniform point on S^n from n+1 normal deviates.
SpherePoint sample_uniform(std::size_t n, RandomStream& rng);

/// <x, y> clamped to [-1, 1].
double clamped_cosine(const SpherePoint& x, const SpherePoint& y);

/// Great-circle distance D(x, y) = arccos(<x, y>).
double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

}  // namespace sid
