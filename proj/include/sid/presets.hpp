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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sid/integrators.hpp"

namespace sid {

inline constexpr std::uint64_t kDefaultMasterSeed = 20240601;

struct CriterionResult {
    std::string id;
    std::string claim;
    double measured = 0.0;
    double threshold = 0.0;
    std::string relation;  ///< how measured compares to threshold when passing
    bool pass = false;
    bool gating = true;    ///< informational lines never fail a report
    std::string note;
};

struct EnsembleRun {
    std::string label;
    std::uint64_t master_seed;
    std::size_t trajectories;
    double h;
};

struct VerificationReport {
    std::string preset;
    std::uint64_t master_seed = 0;
    bool exploratory = false;
    std::string note;
    std::vector<CriterionResult> criteria;
    std::vector<EnsembleRun> ensembles;
    std::optional<double> runtime_seconds;

    /// True when every gating criterion passes.
    bool passed() const noexcept;
};

/// Overrides applied on top of a preset's defaults.
struct PresetOptions {
    double step_scale = 1.0;                 ///< multiplies every ensemble's h
    std::optional<double> h;                 ///< absolute step, applied before step_scale
    std::optional<std::size_t> trajectories;
    std::optional<double> t_end;
    std::optional<std::size_t> dim;          ///< restrict sphere presets to one n
    std::size_t workers = 0;                 ///< 0 selects default_workers()
    bool timed = false;                      ///< fill runtime_seconds
};

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);

/// The preset's primary simulation, for simulate / ensemble runs.
SimConfig preset_config(const std::string& name, std::uint64_t master_seed = kDefaultMasterSeed);

/// Runs the preset's ensembles and evaluates its acceptance checks.
/// Throws ConfigError for an unknown name.
VerificationReport verify_preset(const std::string& name, std::uint64_t master_seed = kDefaultMasterSeed,
                                 const PresetOptions& options = {});

}  // namespace sid
