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

#include "sid/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "sid/errors.hpp"
#include "sid/random_stream.hpp"

namespace sid {

std::size_t default_workers()
{
    if (const char* env = std::getenv("SID_WORKERS")) {
        try {
            const long value = std::stol(env);
            if (value >= 1) return static_cast<std::size_t>(value);
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("SID_WORKERS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TrajectoryRecord> run_records(const SimConfig& cfg, std::size_t n_traj,
                                          std::size_t workers)
{
    if (n_traj < 1) throw ConfigError("ensemble needs at least one trajectory");
    const TrajectoryRunner runner(cfg);
    std::vector<TrajectoryRecord> records(n_traj);
    std::vector<std::exception_ptr> failures(n_traj);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n_traj; i = next.fetch_add(1)) {
            try {
                records[i] = runner.run(derive_seed(cfg.seed, i));
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const std::size_t pool = std::clamp<std::size_t>(workers, 1, n_traj);
    if (pool == 1) {
        work();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(pool);
        for (std::size_t w = 0; w < pool; ++w) threads.emplace_back(work);
    }
    for (const std::exception_ptr& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return records;
}

EnsembleSummary run_ensemble(const SimConfig& cfg, std::size_t n_traj, std::size_t workers)
{
    const std::vector<TrajectoryRecord> records = run_records(cfg, n_traj, workers);
    return summarize(records);
}

std::vector<double> geometric_grid(double first, double last, double ratio)
{
    if (!(first > 0.0) || !(ratio > 1.0)) throw ConfigError("geometric grid needs first > 0, ratio > 1");
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double t = first * std::pow(ratio, k);
        if (t >= last * (1.0 - 1e-12)) break;
        out.push_back(t);
    }
    out.push_back(last);
    return out;
}

std::vector<double> uniform_grid(double first, double last, double step)
{
    if (!(step > 0.0)) throw ConfigError("uniform grid needs a positive step");
    std::vector<double> out;
    for (long long k = 0;; ++k) {
        const double t = first + step * static_cast<double>(k);
        if (t >= last - 1e-9 * std::max(1.0, std::abs(last))) break;
        out.push_back(t);
    }
    out.push_back(last);
    return out;
}

std::vector<double> merge_times(std::vector<double> a, const std::vector<double>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    std::vector<double> out;
    for (double t : a) {
        if (out.empty() || t - out.back() > 1e-9 * std::max(1.0, std::abs(t))) out.push_back(t);
    }
    return out;
}

}  // namespace sid
