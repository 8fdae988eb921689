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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sid {

/// Two vectors (or a vector and a point) live in different ambient spaces.
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A state whose direction is numerically meaningless (zero norm, zero memory radius).
class DegenerateState : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A normalized or weighted schedule was evaluated at t <= 0.
class UndefinedWeight : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The standalone polar system was stepped with R at or below the floor.
class PolarDegeneracy : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input outside an operation's domain (flow domain, sample counts, windows).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Noise family not covered by the symbolic classifier.
class UnsupportedFamily : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad configuration, unknown preset, malformed CLI values.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A trajectory failed mid-run; carries the seed and simulated time of failure.
class TrajectoryError : public std::runtime_error {
public:
    TrajectoryError(std::uint64_t seed, double time, const std::string& what)
        : std::runtime_error("trajectory seed=" + std::to_string(seed) +
                             " failed at t=" + std::to_string(time) + ": " + what),
          seed_(seed),
          time_(time)
    {
    }

    std::uint64_t seed() const noexcept { return seed_; }
    double time() const noexcept { return time_; }

private:
    std::uint64_t seed_;
    double time_;
};

}  // namespace sid
