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

#include "sid/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "sid/errors.hpp"
#include "sid/observables.hpp"
#include "quadrature.hpp"

namespace sid {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vector& scratch_vector(std::size_t dim)
{
    thread_local Vector buffer;
    if (buffer.size() != dim) buffer = Vector(dim);
    return buffer;
}

std::vector<double>& normal_buffer(std::size_t dim)
{
    thread_local std::vector<double> buffer;
    buffer.resize(dim);
    return buffer;
}

void require_step(double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step size must be positive and finite");
}

}  // namespace

double TimeChange::alpha(double t) const
{
    if (form_ == Form::CubeRoot) return std::pow(1.5 * t, 2.0 / 3.0);
    return std::sqrt(2.0 * t);
}

double TimeChange::rate(double t) const
{
    if (!(t > 0.0)) throw DomainError("time change rate is singular at t <= 0");
    if (form_ == Form::CubeRoot) return std::pow(1.5 * t, -1.0 / 3.0);
    return 1.0 / std::sqrt(2.0 * t);
}

void step_circle(CircleState& s, const WeightSchedule& sched, double sigma, double h, double xi)
{
    const double time = s.mem.elapsed();
    const double weight = sched.active(time) ? sched.weight(time) : 0.0;
    const double kernel = s.mem.kernel_then_accumulate(s.theta, h);
    s.theta += weight * kernel * h + sigma * std::sqrt(h) * xi;
    s.t += h;
}

void step_circle(CircleState& s, const WeightSchedule& sched, double sigma, double h, RandomStream& rng)
{
    step_circle(s, sched, sigma, h, rng.normal());
}

void step_sphere(SphereState& s, const WeightSchedule& sched, double sigma, double h,
                 SphereScheme scheme, std::span<const double> xi)
{
    const std::size_t dim = s.x.ambient_dim();
    if (xi.size() != dim || s.mem.sum.size() != dim) throw DimensionMismatch("step_sphere");

    const Vector& x = s.x.vec();
    const Vector& u = s.mem.sum;
    const double time = s.mem.elapsed;
    const double weight = sched.active(time) ? sched.weight(time) : 0.0;
    const double noise_scale = sigma * std::sqrt(h);
    const double radial_noise = dot(x.span(), xi);
    const double overlap = dot(x.span(), u.span());
    double radial_keep = 1.0;
    if (scheme == SphereScheme::ItoCorrected) {
        radial_keep -= 0.5 * static_cast<double>(dim - 1) * sigma * sigma * h;
    }

    Vector& next = scratch_vector(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        next[j] = radial_keep * x[j] + noise_scale * (xi[j] - radial_noise * x[j]) -
                  weight * h * (u[j] - overlap * x[j]);
    }
    s.mem.accumulate(s.x, h);
    SpherePoint moved = renormalize(std::move(next));
    next = std::move(s.x).into_vector();
    s.x = std::move(moved);
    s.t += h;
}

void step_sphere(SphereState& s, const WeightSchedule& sched, double sigma, double h,
                 SphereScheme scheme, RandomStream& rng)
{
    std::vector<double>& xi = normal_buffer(s.x.ambient_dim());
    for (double& v : xi) v = rng.normal();
    step_sphere(s, sched, sigma, h, scheme, xi);
}

void step_polar(PolarState& s, std::size_t n, double h, double xi)
{
    if (!(s.radius > kPolarRadiusFloor)) {
        throw PolarDegeneracy("polar system needs R > " + std::to_string(kPolarRadiusFloor) +
                              ", got R=" + std::to_string(s.radius));
    }
    const double theta = s.alignment;
    const double r = s.radius;
    const double spread = std::max(0.0, 1.0 - theta * theta);
    const double drift = (r + 1.0 / r) * spread - 0.5 * static_cast<double>(n) * theta;
    s.alignment = std::clamp(theta + drift * h + std::sqrt(spread * h) * xi, -1.0, 1.0);
    s.radius = r + theta * h;
    s.t += h;
}

void step_polar(PolarState& s, std::size_t n, double h, RandomStream& rng)
{
    step_polar(s, n, h, rng.normal());
}

void step_timechanged_y(ScalarState& s, std::size_t n, double c, const TimeChange& tc, double h,
                        double xi)
{
    const double y = s.value;
    const double rate = tc.rate(s.t);
    const double spread = std::max(0.0, 1.0 - y * y);
    const double drift = 0.5 * spread - 0.5 * static_cast<double>(n) * rate * y;
    s.value = std::clamp(y + drift * h + std::sqrt(c * rate * spread * h) * xi, -1.0, 1.0);
    s.t += h;
}

void step_timechanged_y(ScalarState& s, std::size_t n, double c, const TimeChange& tc, double h,
                        RandomStream& rng)
{
    step_timechanged_y(s, n, c, tc, h, rng.normal());
}

void step_phi(ScalarState& s, std::size_t n, const TimeChange& tc, double h, double xi)
{
    const double rate = tc.rate(s.t);
    s.value += -0.5 * std::sin(s.value) * h + std::sqrt(static_cast<double>(n) * rate * h) * xi;
    s.t += h;
}

void step_phi(ScalarState& s, std::size_t n, const TimeChange& tc, double h, RandomStream& rng)
{
    step_phi(s, n, tc, h, rng.normal());
}

double ou_transition_variance(double t, double h, double lambda, const NoiseSchedule& eps)
{
    require_step(h);
    if (!(lambda > 0.0)) throw DomainError("OU relaxation rate must be positive");
    const double two_lambda = 2.0 * lambda;
    switch (eps.family()) {
    case NoiseSchedule::Family::Constant:
        return eps.scale() * -std::expm1(-two_lambda * h) / two_lambda;
    case NoiseSchedule::Family::Exponential: {
        const double beta = eps.exponent();
        const double gap = two_lambda - beta;
        const double start = eps.scale() * std::exp(-beta * t);
        if (std::abs(gap * h) < 1e-12) return start * h * std::exp(-beta * h);
        // int_0^h e^{-2 lambda u} e^{-beta (h - u)} du = e^{-beta h} (1 - e^{-gap h}) / gap
        return start * std::exp(-beta * h) * -std::expm1(-gap * h) / gap;
    }
    default: break;
    }
    const double end = t + h;
    auto integrand = [&](double u) { return std::exp(-two_lambda * u) * eps(end - u); };
    return detail::integrate(integrand, 0.0, h, 1e-10);
}

void step_ou_exact(ScalarState& s, double lambda, const NoiseSchedule& eps, double h, double xi)
{
    const double variance = ou_transition_variance(s.t, h, lambda, eps);
    s.value = std::exp(-lambda * h) * s.value + std::sqrt(variance) * xi;
    s.t += h;
}

void step_ou_exact(ScalarState& s, double lambda, const NoiseSchedule& eps, double h,
                   RandomStream& rng)
{
    step_ou_exact(s, lambda, eps, h, rng.normal());
}

double start_time(const Process& process)
{
    return std::visit(Overloaded{
                          [](const TimeChangedYProcess& p) { return p.t0; },
                          [](const PhiProcess& p) { return p.t0; },
                          [](const auto&) { return 0.0; },
                      },
                      process);
}

std::string process_name(const Process& process)
{
    return std::visit(Overloaded{
                          [](const SphereProcess&) { return std::string("sphere"); },
                          [](const CircleProcess&) { return std::string("circle"); },
                          [](const PolarProcess&) { return std::string("polar"); },
                          [](const TimeChangedYProcess&) { return std::string("timechanged-y"); },
                          [](const PhiProcess&) { return std::string("phi"); },
                          [](const OuDecayProcess&) { return std::string("ou-decay"); },
                      },
                      process);
}

std::string describe(const SimConfig& cfg)
{
    std::ostringstream out;
    out << std::setprecision(17);
    out << "process=" << process_name(cfg.process);
    auto vec = [&](const Vector& v) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
        out << ']';
    };
    std::visit(Overloaded{
                   [&](const SphereProcess& p) {
                       out << " n=" << p.n << " scheme="
                           << (p.scheme == SphereScheme::ItoCorrected ? "ito" : "project")
                           << " random_start=" << p.random_start;
                       if (p.x0) { out << " x0="; vec(*p.x0); }
                       if (p.u0) { out << " u0="; vec(*p.u0); }
                   },
                   [&](const CircleProcess& p) {
                       out << " theta0=" << p.theta0 << " modes=";
                       for (const auto& m : p.modes) out << m.k << ':' << m.amplitude << ';';
                   },
                   [&](const PolarProcess& p) {
                       out << " n=" << p.n << " Theta0=" << p.alignment0 << " R0=" << p.radius0;
                   },
                   [&](const TimeChangedYProcess& p) {
                       out << " n=" << p.n << " c=" << p.c << " tc="
                           << (p.time_change.form() == TimeChange::Form::CubeRoot ? "cuberoot" : "sqrttwo")
                           << " y0=" << p.y0 << " t0=" << p.t0;
                   },
                   [&](const PhiProcess& p) {
                       out << " n=" << p.n << " tc="
                           << (p.time_change.form() == TimeChange::Form::CubeRoot ? "cuberoot" : "sqrttwo")
                           << " phi0=" << p.phi0 << " t0=" << p.t0;
                   },
                   [&](const OuDecayProcess& p) {
                       out << " lambda=" << p.lambda << " eps=" << p.eps.describe() << " x0=" << p.x0;
                   },
               },
               cfg.process);
    out << " sigma=" << cfg.sigma << " schedule=";
    switch (cfg.schedule.kind()) {
    case WeightSchedule::Kind::Raw: out << "raw"; break;
    case WeightSchedule::Kind::Normalized: out << "normalized"; break;
    case WeightSchedule::Kind::Weighted: out << "weighted"; break;
    }
    out << '(' << cfg.schedule.coupling() << ",onset=" << cfg.schedule.onset();
    if (const auto& g = cfg.schedule.growth()) {
        out << ",g=" << static_cast<int>(g->kind()) << ':' << g->parameter();
    }
    out << ") h=" << cfg.h << " stiffness_limit=" << cfg.stiffness_limit << " t_end=" << cfg.t_end << " checkpoints=" << cfg.checkpoint_times.size();
    if (!cfg.checkpoint_times.empty()) {
        out << '[' << cfg.checkpoint_times.front() << ".." << cfg.checkpoint_times.back() << ']';
    }
    return out.str();
}

std::string config_digest(const SimConfig& cfg)
{
    const std::string text = describe(cfg);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

TrajectoryRunner::TrajectoryRunner(SimConfig cfg) : cfg_(std::move(cfg))
{
    require_step(cfg_.h);
    if (!(cfg_.sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
    if (!(cfg_.stiffness_limit >= 0.0)) throw ConfigError("stiffness limit must be >= 0");
    t0_ = start_time(cfg_.process);
    if (!(cfg_.t_end >= t0_)) throw ConfigError("t_end precedes the start time");

    std::vector<double> times = cfg_.checkpoint_times;
    if (times.empty()) times.push_back(cfg_.t_end);
    if (!std::is_sorted(times.begin(), times.end())) throw ConfigError("checkpoint times must be sorted");
    if (times.front() < t0_ - 1e-12 || times.back() > cfg_.t_end + 1e-9) {
        throw ConfigError("checkpoint times must lie within [start, t_end]");
    }

    if (const auto* ou = std::get_if<OuDecayProcess>(&cfg_.process)) {
        if (!(ou->lambda > 0.0)) throw ConfigError("OU relaxation rate must be positive");
        times.erase(std::unique(times.begin(), times.end()), times.end());
        ou_times_ = times;
        double now = t0_;
        for (double target : times) {
            const double span = target - now;
            const long long pieces = span > 0.0 ? static_cast<long long>(std::ceil(span / cfg_.h - 1e-9)) : 0;
            for (long long i = 0; i < pieces; ++i) {
                const double a = now + span * static_cast<double>(i) / static_cast<double>(pieces);
                const double b = i + 1 == pieces ? target
                                                 : now + span * static_cast<double>(i + 1) / static_cast<double>(pieces);
                const double dt = b - a;
                ou_plan_.push_back({std::exp(-ou->lambda * dt),
                                    std::sqrt(ou_transition_variance(a, dt, ou->lambda, ou->eps)), false});
            }
            if (pieces == 0) ou_plan_.push_back({1.0, 0.0, true});
            else ou_plan_.back().record_after = true;
            now = target;
        }
    } else {
        total_steps_ = std::llround((cfg_.t_end - t0_) / cfg_.h);
        for (double t : times) {
            record_steps_.push_back(std::min(total_steps_, std::llround((t - t0_) / cfg_.h)));
        }
        record_steps_.erase(std::unique(record_steps_.begin(), record_steps_.end()), record_steps_.end());
    }
    if (const auto* circle = std::get_if<CircleProcess>(&cfg_.process)) {
        if (circle->modes.empty()) throw ConfigError("circle process needs at least one mode");
        (void)FourierMemory(circle->modes);
    }
    if (const auto* sphere = std::get_if<SphereProcess>(&cfg_.process)) {
        if (sphere->n < 1) throw ConfigError("sphere dimension must be >= 1");
        if (sphere->x0 && sphere->x0->size() != sphere->n + 1) throw ConfigError("x0 has the wrong dimension");
        if (sphere->u0 && sphere->u0->size() != sphere->n + 1) throw ConfigError("u0 has the wrong dimension");
    }
    if (const auto* polar = std::get_if<PolarProcess>(&cfg_.process)) {
        if (!(polar->radius0 > kPolarRadiusFloor)) {
            throw ConfigError("standalone polar runs must start with R above the floor");
        }
        if (std::abs(polar->alignment0) > 1.0) throw ConfigError("Theta0 must lie in [-1, 1]");
    }
    digest_ = config_digest(cfg_);
}

TrajectoryRecord TrajectoryRunner::run(std::uint64_t seed) const
{
    RandomStream rng(seed);
    TrajectoryRecord record = std::visit(
        Overloaded{
            [&](const SphereProcess& p) { return run_sphere(p, rng); },
            [&](const CircleProcess& p) { return run_circle(p, rng); },
            [&](const PolarProcess& p) { return run_polar(p, rng); },
            [&](const TimeChangedYProcess& p) { return run_y(p, rng); },
            [&](const PhiProcess& p) { return run_phi(p, rng); },
            [&](const OuDecayProcess& p) { return run_ou(p, rng); },
        },
        cfg_.process);
    record.seed = seed;
    record.config_digest = digest_;
    return record;
}

namespace {

/// Drives `step` from 0 to total, calling `save` at each recorded index.
/// Errors are rethrown with the seed and the time of failure.
template <class Step, class Save>
void drive(long long total, std::span<const long long> record_at, double t0, double h,
           std::uint64_t seed, Step&& step, Save&& save)
{
    std::size_t next = 0;
    long long k = 0;
    try {
        for (; k <= total; ++k) {
            const double t = t0 + static_cast<double>(k) * h;
            if (next < record_at.size() && record_at[next] == k) {
                save(t);
                ++next;
            }
            if (k == total) break;
            step(t);
        }
    } catch (const TrajectoryError&) {
        throw;
    } catch (const std::exception& e) {
        throw TrajectoryError(seed, t0 + static_cast<double>(k) * h, e.what());
    }
}

constexpr long long kMaxSubsteps = 1 << 20;

/// Number of equal Euler substeps that keep h * stiffness within limit.
long long substeps(double h, double stiffness, double limit)
{
    if (!(limit > 0.0)) return 1;
    const double ratio = h * stiffness / limit;
    if (ratio <= 1.0) return 1;
    if (!(ratio < static_cast<double>(kMaxSubsteps))) {
        throw DomainError("drift too stiff for the base step (h * stiffness = " + std::to_string(h * stiffness) + ")");
    }
    return static_cast<long long>(std::ceil(ratio));
}

double schedule_weight(const WeightSchedule& sched, double t)
{
    return sched.active(t) ? std::abs(sched.weight(t)) : 0.0;
}

Checkpoint sphere_checkpoint(double t, const SpherePoint& x, const Vector& u)
{
    const PolarCoordinates polar = polar_decompose(x, u);
    Checkpoint c;
    c.t = t;
    c.alignment = polar.alignment;
    c.radius = polar.radius;
    c.direction = polar.direction.vec();
    c.position = x.vec();
    return c;
}

}  // namespace

TrajectoryRecord TrajectoryRunner::run_sphere(const SphereProcess& p, RandomStream& rng) const
{
    const std::size_t dim = p.n + 1;
    SpherePoint x0 = p.random_start ? sample_uniform(p.n, rng)
                                    : renormalize(p.x0.value_or(Vector::basis(dim, 0)));
    SphereState s{t0_, std::move(x0), p.u0 ? SphereMemory(*p.u0, 0.0) : SphereMemory(dim)};
    std::vector<double> xi(dim);

    TrajectoryRecord record;
    record.checkpoints.reserve(record_steps_.size());
    drive(
        total_steps_, record_steps_, t0_, cfg_.h, rng.seed(),
        [&](double t) {
            const double stiffness = schedule_weight(cfg_.schedule, s.mem.elapsed) * norm(s.mem.sum);
            const long long m = substeps(cfg_.h, stiffness, cfg_.stiffness_limit);
            const double dt = cfg_.h / static_cast<double>(m);
            for (long long j = 0; j < m; ++j) {
                for (double& v : xi) v = rng.normal();
                step_sphere(s, cfg_.schedule, cfg_.sigma, dt, p.scheme, xi);
            }
            s.t = t + cfg_.h;
        },
        [&](double t) { record.checkpoints.push_back(sphere_checkpoint(t, s.x, s.mem.sum)); });
    return record;
}

TrajectoryRecord TrajectoryRunner::run_circle(const CircleProcess& p, RandomStream& rng) const
{
    std::vector<FourierMode> modes = p.modes;
    // A zero-amplitude fundamental tracks U = (A_1, B_1) for the polar observables.
    if (std::none_of(modes.begin(), modes.end(), [](const FourierMode& m) { return m.k == 1; })) {
        modes.push_back({1, 0.0});
    }
    CircleState s{t0_, p.theta0, FourierMemory(std::move(modes))};
    const std::size_t fundamental = *s.mem.find(1);

    TrajectoryRecord record;
    record.checkpoints.reserve(record_steps_.size());
    drive(
        total_steps_, record_steps_, t0_, cfg_.h, rng.seed(),
        [&](double t) {
            double curvature = 0.0;
            for (std::size_t i = 0; i < s.mem.modes().size(); ++i) {
                const FourierMode& mode = s.mem.modes()[i];
                curvature += static_cast<double>(mode.k) * mode.k * std::abs(mode.amplitude) *
                             std::hypot(s.mem.cos_sums()[i], s.mem.sin_sums()[i]);
            }
            const double stiffness = schedule_weight(cfg_.schedule, s.mem.elapsed()) * curvature;
            const long long m = substeps(cfg_.h, stiffness, cfg_.stiffness_limit);
            const double dt = cfg_.h / static_cast<double>(m);
            for (long long j = 0; j < m; ++j) step_circle(s, cfg_.schedule, cfg_.sigma, dt, rng.normal());
            s.t = t + cfg_.h;
        },
        [&](double t) {
            const SpherePoint x = renormalize(Vector{std::cos(s.theta), std::sin(s.theta)});
            const Vector u{s.mem.cos_sums()[fundamental], s.mem.sin_sums()[fundamental]};
            Checkpoint c = sphere_checkpoint(t, x, u);
            c.theta = s.theta;
            record.checkpoints.push_back(std::move(c));
        });
    return record;
}

TrajectoryRecord TrajectoryRunner::run_polar(const PolarProcess& p, RandomStream& rng) const
{
    PolarState s{t0_, p.alignment0, p.radius0};
    TrajectoryRecord record;
    record.checkpoints.reserve(record_steps_.size());
    drive(
        total_steps_, record_steps_, t0_, cfg_.h, rng.seed(),
        [&](double t) {
            const double stiffness = 2.0 * (s.radius + 1.0 / s.radius) + 0.5 * static_cast<double>(p.n);
            const long long m = substeps(cfg_.h, stiffness, cfg_.stiffness_limit);
            const double dt = cfg_.h / static_cast<double>(m);
            for (long long j = 0; j < m; ++j) step_polar(s, p.n, dt, rng.normal());
            s.t = t + cfg_.h;
        },
        [&](double t) {
            Checkpoint c;
            c.t = t;
            c.alignment = s.alignment;
            c.radius = s.radius;
            record.checkpoints.push_back(std::move(c));
        });
    return record;
}

TrajectoryRecord TrajectoryRunner::run_y(const TimeChangedYProcess& p, RandomStream& rng) const
{
    ScalarState s{t0_, std::clamp(p.y0, -1.0, 1.0)};
    TrajectoryRecord record;
    record.scalar_label = "Y";
    record.checkpoints.reserve(record_steps_.size());
    drive(
        total_steps_, record_steps_, t0_, cfg_.h, rng.seed(),
        [&](double t) {
            s.t = t;
            step_timechanged_y(s, p.n, p.c, p.time_change, cfg_.h, rng.normal());
        },
        [&](double t) {
            Checkpoint c;
            c.t = t;
            c.scalar = s.value;
            record.checkpoints.push_back(std::move(c));
        });
    return record;
}

TrajectoryRecord TrajectoryRunner::run_phi(const PhiProcess& p, RandomStream& rng) const
{
    ScalarState s{t0_, p.phi0};
    TrajectoryRecord record;
    record.scalar_label = "phi";
    record.checkpoints.reserve(record_steps_.size());
    drive(
        total_steps_, record_steps_, t0_, cfg_.h, rng.seed(),
        [&](double t) {
            s.t = t;
            step_phi(s, p.n, p.time_change, cfg_.h, rng.normal());
        },
        [&](double t) {
            Checkpoint c;
            c.t = t;
            c.scalar = s.value;
            record.checkpoints.push_back(std::move(c));
        });
    return record;
}

TrajectoryRecord TrajectoryRunner::run_ou(const OuDecayProcess& p, RandomStream& rng) const
{
    TrajectoryRecord record;
    record.scalar_label = "x";
    record.checkpoints.reserve(ou_times_.size());
    double x = p.x0;
    std::size_t next_time = 0;
    for (const OuStep& step : ou_plan_) {
        x = step.decay * x + step.sd * rng.normal();
        if (step.record_after) {
            Checkpoint c;
            c.t = ou_times_[next_time++];
            c.scalar = x;
            record.checkpoints.push_back(std::move(c));
        }
    }
    return record;
}

TrajectoryRecord run_trajectory(const SimConfig& cfg) { return TrajectoryRunner(cfg).run(cfg.seed); }

}  // namespace sid
