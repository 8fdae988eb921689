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
#include <optional>
#include <string>
#include <vector>

#include "sid/sphere_geometry.hpp"

namespace sid {

/// Observables of one trajectory at one time. Fields a process does not
/// define stay empty.
struct Checkpoint {
    double t = 0.0;
    std::optional<double> theta;      ///< unwrapped circle angle
    std::optional<double> alignment;  ///< Theta = <V, X>
    std::optional<double> radius;     ///< R = |U|
    Vector direction;                 ///< V
    Vector position;                  ///< X
    std::optional<double> scalar;     ///< Y, phi or x, named by TrajectoryRecord::scalar_label
};

struct TrajectoryRecord {
    std::vector<Checkpoint> checkpoints;
    std::uint64_t seed = 0;
    std::string config_digest;
    std::string scalar_label;  ///< empty when no scalar column exists
};

}  // namespace sid
