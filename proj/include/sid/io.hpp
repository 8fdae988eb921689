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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sid/integrators.hpp"
#include "sid/memory_drift.hpp"
#include "sid/observables.hpp"
#include "sid/presets.hpp"
#include "sid/record.hpp"

namespace sid {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

/// "k1:a1,k2:a2,..." -> modes. Throws ConfigError on malformed input.
std::vector<FourierMode> parse_modes(std::string_view text);

/// JSON config text -> SimConfig. Unknown keys are rejected.
///
///   {"process": {"type": "sphere", "n": 2},
///    "schedule": {"kind": "raw", "coupling": -1},
///    "sigma": 1, "h": 1e-3, "t_end": 100, "seed": 7,
///    "checkpoints": [10, 50, 100]}
///
/// "checkpoints" also accepts {"geometric": {"first": 1, "ratio": 1.1}} or
/// {"uniform": {"first": 0, "step": 1}}, both running to t_end.
SimConfig parse_config(std::string_view json_text);
SimConfig load_config(const std::string& path);

/// Inverse of parse_config for configs without custom noise schedules.
std::string config_to_json(const SimConfig& cfg);

/// Header plus one row per checkpoint. Columns that the process does not
/// produce are left out.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);
void write_trajectory_json(std::ostream& out, const TrajectoryRecord& record);

/// t,observable,mean,std_error,q05,q50,q95,count
void write_summary_csv(std::ostream& out, const EnsembleSummary& summary);
void write_summary_json(std::ostream& out, const EnsembleSummary& summary);

std::string report_to_json(const VerificationReport& report);
void write_report_text(std::ostream& out, const VerificationReport& report);

}  // namespace sid
