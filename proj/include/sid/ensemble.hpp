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
#include <vector>

#include "sid/integrators.hpp"
#include "sid/observables.hpp"
#include "sid/record.hpp"

namespace sid {

/// Worker count from SID_WORKERS, else the hardware concurrency (min 1).
std::size_t default_workers();

/// Runs trajectories 0..n-1 of an ensemble rooted at cfg.seed; trajectory i
/// uses derive_seed(cfg.seed, i). Output order is the index order regardless
/// of the worker count. The first failing index is rethrown as TrajectoryError.
std::vector<TrajectoryRecord> run_records(const SimConfig& cfg, std::size_t n_traj,
                                          std::size_t workers);

/// summarize(run_records(cfg, n_traj, workers)).
EnsembleSummary run_ensemble(const SimConfig& cfg, std::size_t n_traj, std::size_t workers);

/// first * ratio^k up to last, with last appended.
std::vector<double> geometric_grid(double first, double last, double ratio);

/// first, first + step, ... up to last, with last appended.
std::vector<double> uniform_grid(double first, double last, double step);

/// Sorted union; times closer than 1e-9 are merged.
std::vector<double> merge_times(std::vector<double> a, const std::vector<double>& b);

}  // namespace sid
