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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sid/memory_drift.hpp"
#include "sid/noise_schedule.hpp"
#include "sid/random_stream.hpp"
#include "sid/record.hpp"
#include "sid/sphere_geometry.hpp"

namespace sid {

enum class SphereScheme {
    ProjectRenormalize,  ///< tangent noise, Euler step, renormalize
    ItoCorrected,        ///< same, plus the explicit -(n/2) sigma^2 X h drift before renormalizing
};

/// Deterministic clock alpha(t) used by the time-changed comparison processes.
class TimeChange {
public:
    enum class Form {
        CubeRoot,  ///< alpha(t) = (3t/2)^{2/3}, alpha'(t) = alpha(t)^{-1/2}
        SqrtTwo,   ///< alpha(t) = sqrt(2t),     alpha'(t) = (2t)^{-1/2}
    };

    explicit TimeChange(Form form = Form::SqrtTwo) : form_(form) {}

    double alpha(double t) const;
    double rate(double t) const;
    Form form() const noexcept { return form_; }

private:
    Form form_;
};

/// Standalone polar runs must start (and stay) above this radius.
inline constexpr double kPolarRadiusFloor = 1e-6;

struct SphereState {
    double t;
    SpherePoint x;
    SphereMemory mem;
};

struct CircleState {
    double t;
    double theta;
    FourierMemory mem;
};

struct PolarState {
    double t;
    double alignment;  ///< Theta in [-1, 1]
    double radius;     ///< R > 0
};

/// Y (time-changed alignment), phi, or the linear OU coordinate.
struct ScalarState {
    double t;
    double value;
};

/// Euler-Maruyama step of the circle process; the accumulators absorb the
/// pre-step angle.
void step_circle(CircleState& s, const WeightSchedule& sched, double sigma, double h, double xi);
void step_circle(CircleState& s, const WeightSchedule& sched, double sigma, double h, RandomStream& rng);

/// One step of the (X, U) system on S^n. `xi` holds n+1 standard normals.
void step_sphere(SphereState& s, const WeightSchedule& sched, double sigma, double h,
                 SphereScheme scheme, std::span<const double> xi);
void step_sphere(SphereState& s, const WeightSchedule& sched, double sigma, double h,
                 SphereScheme scheme, RandomStream& rng);

/// dTheta = [(R + 1/R)(1 - Theta^2) - (n/2) Theta] dt + sqrt(1 - Theta^2) dW,  dR = Theta dt.
/// Theta is clamped to [-1, 1]; throws PolarDegeneracy when R <= kPolarRadiusFloor.
void step_polar(PolarState& s, std::size_t n, double h, double xi);
void step_polar(PolarState& s, std::size_t n, double h, RandomStream& rng);

/// dY = [(1 - Y^2)/2 - (n/2) alpha'(t) Y] dt + sqrt(c alpha'(t)) sqrt(1 - Y^2) dB, clamped.
void step_timechanged_y(ScalarState& s, std::size_t n, double c, const TimeChange& tc, double h,
                        double xi);
void step_timechanged_y(ScalarState& s, std::size_t n, double c, const TimeChange& tc, double h,
                        RandomStream& rng);

/// dphi = -sin(phi)/2 dt + sqrt(n alpha'(t)) dB.
void step_phi(ScalarState& s, std::size_t n, const TimeChange& tc, double h, double xi);
void step_phi(ScalarState& s, std::size_t n, const TimeChange& tc, double h, RandomStream& rng);

/// v = int_t^{t+h} exp(-2 lambda (t + h - s)) eps(s) ds. Closed form for the
/// constant and exponential families, adaptive Simpson (rel. tol 1e-10) otherwise.
double ou_transition_variance(double t, double h, double lambda, const NoiseSchedule& eps);

/// Exact transition of dX = -lambda X dt + sqrt(eps(t)) dB over [t, t + h].
void step_ou_exact(ScalarState& s, double lambda, const NoiseSchedule& eps, double h, double xi);
void step_ou_exact(ScalarState& s, double lambda, const NoiseSchedule& eps, double h,
                   RandomStream& rng);

// Process descriptions. Initial conditions live with the process they start.

struct SphereProcess {
    std::size_t n = 2;
    std::optional<Vector> x0;  ///< defaults to e_1; renormalized
    bool random_start = false; ///< draw x0 uniformly from the trajectory stream instead
    std::optional<Vector> u0;  ///< initial memory, defaults to 0
    SphereScheme scheme = SphereScheme::ProjectRenormalize;
};

struct CircleProcess {
    std::vector<FourierMode> modes{{1, 1.0}};
    double theta0 = 0.0;
};

/// The polar system carries sigma = 1, a = -1 in its coefficients.
struct PolarProcess {
    std::size_t n = 2;
    double alignment0 = 0.0;
    double radius0 = 1.0;
};

struct TimeChangedYProcess {
    std::size_t n = 1;
    double c = 1.0;
    TimeChange time_change{TimeChange::Form::CubeRoot};
    double y0 = 0.0;
    double t0 = 0.5;
};

struct PhiProcess {
    std::size_t n = 1;
    TimeChange time_change{TimeChange::Form::SqrtTwo};
    double phi0 = 0.0;
    double t0 = 0.5;
};

struct OuDecayProcess {
    double lambda = 1.0;
    NoiseSchedule eps = NoiseSchedule::power(1.0, 1.0);
    double x0 = 1.0;
};

using Process = std::variant<SphereProcess, CircleProcess, PolarProcess, TimeChangedYProcess,
                             PhiProcess, OuDecayProcess>;

struct SimConfig {
    Process process = CircleProcess{};
    double sigma = 1.0;
    WeightSchedule schedule = WeightSchedule::raw(-1.0);
    /// Base step. For OuDecay it is the largest exact substep.
    double h = 1e-3;
    /// Circle, sphere and polar runs split a base step into m equal Euler
    /// substeps when h times a bound on the drift Jacobian exceeds this
    /// limit. Checkpoints stay on the base grid. 0 disables the split.
    double stiffness_limit = 0.5;
    double t_end = 1.0;
    /// Sorted times to record; t_end is recorded when the list is empty.
    std::vector<double> checkpoint_times;
    std::uint64_t seed = 0;
};

/// Start time of the process (t0 for the time-changed ones, 0 otherwise).
double start_time(const Process& process);

/// Short name: sphere, circle, polar, timechanged-y, phi, ou-decay.
std::string process_name(const Process& process);

/// Canonical one-line rendering of every field that affects the output.
std::string describe(const SimConfig& cfg);

/// FNV-1a of describe(cfg), hex.
std::string config_digest(const SimConfig& cfg);

/// Validated, precomputed form of a SimConfig. run() is const and may be
/// called concurrently with different seeds.
class TrajectoryRunner {
public:
    explicit TrajectoryRunner(SimConfig cfg);

    /// Simulates with the given stream seed; errors surface as TrajectoryError.
    TrajectoryRecord run(std::uint64_t seed) const;

    const SimConfig& config() const noexcept { return cfg_; }

private:
    struct OuStep {
        double decay;
        double sd;
        bool record_after;
    };

    TrajectoryRecord run_sphere(const SphereProcess& p, RandomStream& rng) const;
    TrajectoryRecord run_circle(const CircleProcess& p, RandomStream& rng) const;
    TrajectoryRecord run_polar(const PolarProcess& p, RandomStream& rng) const;
    TrajectoryRecord run_y(const TimeChangedYProcess& p, RandomStream& rng) const;
    TrajectoryRecord run_phi(const PhiProcess& p, RandomStream& rng) const;
    TrajectoryRecord run_ou(const OuDecayProcess& p, RandomStream& rng) const;

    SimConfig cfg_;
    std::string digest_;
    double t0_ = 0.0;
    long long total_steps_ = 0;
    std::vector<long long> record_steps_;  ///< sorted, unique step indices to record
    std::vector<double> ou_times_;         ///< OU: exact record times
    std::vector<OuStep> ou_plan_;
};

/// TrajectoryRunner(cfg).run(cfg.seed).
TrajectoryRecord run_trajectory(const SimConfig& cfg);

}  // namespace sid
