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

#include "sid/presets.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <utility>

#include "sid/ensemble.hpp"
#include "sid/errors.hpp"
#include "sid/flows.hpp"
#include "sid/observables.hpp"
#include "sid/random_stream.hpp"

namespace sid {

namespace {

std::size_t required(std::size_t total, double fraction)
{
    return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
}

CriterionResult check(std::string id, std::string claim, double measured, std::string relation,
                      double threshold, bool gating = true)
{
    CriterionResult r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.measured = measured;
    r.threshold = threshold;
    r.relation = relation;
    r.gating = gating;
    if (relation == "<") r.pass = measured < threshold;
    else if (relation == "<=") r.pass = measured <= threshold;
    else if (relation == ">") r.pass = measured > threshold;
    else if (relation == ">=") r.pass = measured >= threshold;
    else throw ConfigError("unknown relation " + relation);
    return r;
}

CriterionResult count_check(std::string id, std::string claim, std::size_t hits, std::size_t total,
                            double fraction)
{
    CriterionResult r = check(std::move(id), std::move(claim), static_cast<double>(hits), ">=",
                              static_cast<double>(required(total, fraction)));
    r.note = std::to_string(hits) + " of " + std::to_string(total);
    return r;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

SphereProcess sphere_from_pole(std::size_t n)
{
    SphereProcess p;
    p.n = n;
    p.x0 = Vector::basis(n + 1, 0);
    return p;
}

SimConfig base_config(Process process, WeightSchedule schedule, double t_end)
{
    SimConfig cfg;
    cfg.process = std::move(process);
    cfg.schedule = std::move(schedule);
    cfg.sigma = 1.0;
    cfg.h = 1e-3;
    cfg.t_end = t_end;
    return cfg;
}

/// Drives every ensemble of one preset: seeds, overrides and bookkeeping.
class Session {
public:
    Session(VerificationReport& report, const PresetOptions& opt)
        : report_(report), opt_(opt), workers_(opt.workers ? opt.workers : default_workers())
    {
    }

    std::size_t count(std::size_t fallback) const { return opt_.trajectories.value_or(fallback); }
    double horizon(double fallback) const { return opt_.t_end.value_or(fallback); }

    std::vector<std::size_t> dims(std::vector<std::size_t> fallback) const
    {
        if (opt_.dim) return {*opt_.dim};
        return fallback;
    }

    std::vector<TrajectoryRecord> run(const std::string& label, SimConfig cfg, std::size_t n)
    {
        cfg.seed = derive_seed(report_.master_seed, ~static_cast<std::uint64_t>(next_label_++));
        if (opt_.h) cfg.h = *opt_.h;
        cfg.h *= opt_.step_scale;
        report_.ensembles.push_back({label, cfg.seed, n, cfg.h});
        return run_records(cfg, n, workers_);
    }

    void add(CriterionResult r) { report_.criteria.push_back(std::move(r)); }

private:
    VerificationReport& report_;
    const PresetOptions& opt_;
    std::size_t workers_;
    int next_label_ = 0;
};

std::vector<double> column(const std::vector<TrajectoryRecord>& records, std::size_t index,
                           Observable which)
{
    std::vector<double> out;
    out.reserve(records.size());
    for (const TrajectoryRecord& r : records) {
        const auto v = observable_value(r.checkpoints.at(index), which);
        if (!v) throw DomainError("record lacks the requested observable");
        out.push_back(*v);
    }
    return out;
}

std::size_t checkpoint_index(const TrajectoryRecord& r, double t)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.checkpoints.size(); ++i) {
        if (std::abs(r.checkpoints[i].t - t) < std::abs(r.checkpoints[best].t - t)) best = i;
    }
    return best;
}

double relative_gap(const MeanStderr& a, const MeanStderr& b)
{
    const double se = std::hypot(a.std_error, b.std_error);
    const double d = std::abs(a.mean - b.mean);
    if (se == 0.0) return d == 0.0 ? 0.0 : INFINITY;
    return d / se;
}

void martingale_identity(Session& s)
{
    const double t_end = s.horizon(1.0);
    std::vector<double> times;
    for (double t : {0.25, 0.5, 1.0}) {
        if (t <= t_end + 1e-12) times.push_back(t);
    }
    if (times.empty() || times.back() < t_end - 1e-12) times.push_back(t_end);
    const std::size_t n_traj = s.count(10000);

    for (std::size_t n : s.dims({1, 2})) {
        SimConfig cfg = base_config(sphere_from_pole(n), WeightSchedule::raw(-1.0), t_end);
        cfg.checkpoint_times = times;
        const auto records = s.run("sphere n=" + std::to_string(n), cfg, n_traj);
        for (std::size_t k = 0; k < times.size(); ++k) {
            std::vector<Checkpoint> slice;
            slice.reserve(records.size());
            for (const auto& r : records) slice.push_back(r.checkpoints.at(k));
            const std::string tag = "n=" + std::to_string(n) + " t=" + fmt(times[k]);
            for (const bool literal : {true, false}) {
                if (!literal && n == 1) continue;
                const double q = literal ? 0.25 : 0.25 * static_cast<double>(n);
                const MeanStderr m = martingale_stat(slice, q);
                const std::string form = literal ? "exp(2t - 2(R Theta + R^2/4))"
                                                 : "exp(2t - 2(R Theta + n R^2/4))";
                const std::string prefix = literal ? "martingale " : "martingale-n/4 ";
                CriterionResult within = check(prefix + tag + " mean",
                                               "E[" + form + "] = 1", std::abs(m.mean - 1.0), "<=",
                                               3.0 * m.std_error, literal);
                within.note = "mean " + fmt(m.mean) + " +- " + fmt(m.std_error);
                s.add(within);
                s.add(check(prefix + tag + " stderr", "standard error of the ensemble mean",
                            m.std_error, "<", 0.05, literal));
            }
        }
    }
}

void attract_sphere(Session& s)
{
    const double t_end = s.horizon(2000.0);
    const double burnin = std::min(100.0, t_end);
    const std::size_t n_traj = s.count(100);
    for (std::size_t n : s.dims({1, 2})) {
        SimConfig cfg = base_config(sphere_from_pole(n), WeightSchedule::raw(-1.0), t_end);
        cfg.checkpoint_times = geometric_grid(burnin, t_end, 1.1);
        const auto records = s.run("sphere n=" + std::to_string(n), cfg, n_traj);
        std::size_t liminf_ok = 0, align_ok = 0, radius_ok = 0;
        for (const auto& r : records) {
            if (liminf_ratio(r, burnin) > 0.9) ++liminf_ok;
            const Checkpoint& last = r.checkpoints.back();
            if (*last.alignment > 0.99) ++align_ok;
            const double ratio = *last.radius / last.t;
            if (ratio >= 0.95 && ratio <= 1.01) ++radius_ok;
        }
        const std::string tag = " n=" + std::to_string(n);
        s.add(count_check("liminf R/sqrt(t) > 0.9" + tag, "liminf R_t/sqrt(t) >= 1", liminf_ok,
                          records.size(), 0.95));
        s.add(count_check("terminal Theta > 0.99" + tag, "Theta_t -> 1", align_ok, records.size(), 0.95));
        s.add(count_check("terminal R/t in [0.95, 1.01]" + tag, "R_t / t -> 1", radius_ok,
                          records.size(), 0.95));
    }
}

void attract_circle(Session& s)
{
    const double t_end = s.horizon(10000.0);
    const double t_lo = std::min(100.0, t_end / 8.0);
    const double t_hi = t_end / 4.0;
    SimConfig cfg = base_config(CircleProcess{}, WeightSchedule::raw(-1.0), t_end);
    cfg.checkpoint_times = merge_times(geometric_grid(t_lo, t_hi, 1.01), {t_end});
    const auto records = s.run("circle a=-1", cfg, s.count(100));
    std::size_t slope_ok = 0, align_ok = 0;
    std::vector<double> slopes;
    for (const auto& r : records) {
        const RateFit fit = rate_fit(r, Observable::Theta, std::nullopt, t_lo, t_hi);
        slopes.push_back(fit.slope);
        if (fit.slope >= -0.70 && fit.slope <= -0.30) ++slope_ok;
        if (*r.checkpoints.back().alignment > 0.99) ++align_ok;
    }
    s.add(count_check("rate slope in [-0.70, -0.30]", "|theta_t - theta_inf| = O(t^-1/2 log^(gamma/2) t)",
                      slope_ok, records.size(), 0.80));
    s.add(count_check("terminal Theta > 0.99", "Theta_t -> 1", align_ok, records.size(), 0.95));
    CriterionResult median = check("median rate slope", "fitted log-log slope", quantile(slopes, 0.5),
                                   "<", 0.0, false);
    median.note = "q05 " + fmt(quantile(slopes, 0.05)) + ", q95 " + fmt(quantile(slopes, 0.95));
    s.add(median);
}

void repulse_circle(Session& s)
{
    const double t_end = s.horizon(500.0);
    SimConfig cfg = base_config(CircleProcess{}, WeightSchedule::raw(1.0), t_end);
    const auto records = s.run("circle a=+1", cfg, s.count(500));
    const std::vector<double> angles = column(records, 0, Observable::Theta);
    s.add(check("KS to uniform", "terminal angles are uniform on the circle", ks_uniform_circle(angles),
                "<", ks_critical_5pct(angles.size())));
}

void blr_normalized(Session& s)
{
    const double t_end = s.horizon(10000.0);
    const std::size_t bins = 32;
    for (const double c : {-0.5, -3.0}) {
        SimConfig cfg = base_config(CircleProcess{}, WeightSchedule::normalized(c, 1.0), t_end);
        cfg.checkpoint_times = uniform_grid(0.0, t_end, 1.0);
        const auto records = s.run("normalized c=" + fmt(c), cfg, 1);
        const TrajectoryRecord& r = records.front();
        const std::vector<double> hist = occupation_histogram(r, t_end, bins);
        const std::string tag = " c=" + fmt(c);
        if (c >= -1.0) {
            double worst = 0.0;
            for (double m : hist) worst = std::max(worst, std::abs(m - 1.0 / static_cast<double>(bins)));
            s.add(check("occupation max deviation" + tag, "occupation measure -> uniform", worst, "<", 0.02));
        } else {
            std::vector<double> angles;
            for (std::size_t i = 0; i + 1 < r.checkpoints.size(); ++i) angles.push_back(*r.checkpoints[i].theta);
            const VonMisesFit fit = vonmises_fit(angles);
            s.add(check("von Mises concentration" + tag, "occupation measure -> von Mises law",
                        fit.concentration, ">", 0.5));
            s.add(check("KS to fitted von Mises" + tag, "occupation measure -> von Mises law",
                        histogram_ks_vonmises(hist, fit), "<", 2.0 * ks_critical_5pct(angles.size())));
        }
    }
}

void raimond_weighted(Session& s)
{
    const double t_end = s.horizon(2000.0);
    SimConfig cfg = base_config(CircleProcess{},
                                WeightSchedule::weighted(-1.0, GrowthFunction::logarithmic(1.0), 1.0), t_end);
    cfg.checkpoint_times = uniform_grid(t_end / 2.0, t_end, 1.0);
    const auto records = s.run("weighted log(1+t)", cfg, s.count(20));
    std::vector<double> resultants;
    for (const auto& r : records) {
        double sc = 0.0, ss = 0.0;
        for (const Checkpoint& c : r.checkpoints) {
            sc += std::cos(*c.theta);
            ss += std::sin(*c.theta);
        }
        resultants.push_back(std::hypot(sc, ss) / static_cast<double>(r.checkpoints.size()));
    }
    s.add(check("median late-window resultant", "occupation measure -> a point mass",
                quantile(resultants, 0.5), ">", 0.8));
}

void polar_direct(Session& s)
{
    const double t_end = s.horizon(5.0);
    const std::size_t n_traj = s.count(2000);
    const std::vector<double> times = merge_times({std::min(1.0, t_end)}, {t_end});

    PolarProcess polar;
    polar.n = 2;
    SimConfig pc = base_config(polar, WeightSchedule::raw(-1.0), t_end);
    pc.checkpoint_times = times;
    SphereProcess sphere = sphere_from_pole(2);
    sphere.u0 = Vector::basis(3, 1);
    SimConfig sc = base_config(sphere, WeightSchedule::raw(-1.0), t_end);
    sc.checkpoint_times = times;

    const auto pr = s.run("polar n=2", pc, n_traj);
    const auto sr = s.run("sphere n=2", sc, n_traj);
    auto compare = [&](const std::string& name, Observable which, std::size_t k) {
        const MeanStderr a = mean_stderr(column(pr, k, which));
        const MeanStderr b = mean_stderr(column(sr, k, which));
        CriterionResult r = check(name + " t=" + fmt(times[k]), "polar system reproduces (Theta, R) in law",
                                  relative_gap(a, b), "<=", 2.0);
        r.note = "polar " + fmt(a.mean) + ", sphere " + fmt(b.mean) + " (gap in combined SE)";
        s.add(r);
    };
    for (std::size_t k = 0; k < times.size(); ++k) compare("mean Theta", Observable::Alignment, k);
    compare("mean R", Observable::Radius, times.size() - 1);
}

void timechanged_y(Session& s)
{
    const double window = 5.0;
    const double t_end = s.horizon(10000.0 + window);
    std::vector<double> starts;
    for (double t : {100.0, 1000.0, 10000.0}) {
        if (t + window <= t_end + 1e-9) starts.push_back(t);
    }
    if (starts.size() < 2) throw ConfigError("timechanged-y needs t_end >= 1005");

    TimeChangedYProcess p;
    p.n = 1;
    p.c = 1.0;
    p.time_change = TimeChange(TimeChange::Form::CubeRoot);
    p.y0 = 0.0;
    SimConfig cfg = base_config(p, WeightSchedule::raw(-1.0), t_end);
    std::vector<double> grid;
    for (double t : starts) grid = merge_times(std::move(grid), uniform_grid(t, t + window, 0.01));
    const double terminal_check = starts.back();
    cfg.checkpoint_times = merge_times(std::move(grid), {t_end});
    const auto records = s.run("Y cube-root", cfg, s.count(200));

    std::vector<double> medians;
    for (double t0 : starts) {
        std::vector<double> gaps;
        for (const auto& r : records) {
            std::vector<PathSample> path;
            for (const Checkpoint& c : r.checkpoints) {
                if (c.t >= t0 - 1e-9 && c.t <= t0 + window + 1e-9) path.push_back({c.t, *c.scalar});
            }
            gaps.push_back(pseudo_gap(path, FlowKind::Logistic, path.front().t, window));
        }
        medians.push_back(quantile(gaps, 0.5));
    }
    double worst = 0.0;
    std::string trail;
    for (std::size_t i = 0; i < medians.size(); ++i) {
        if (i) {
            worst = std::max(worst, medians[i - 1] > 0.0 ? medians[i] / medians[i - 1] : INFINITY);
            trail += ", ";
        }
        trail += "t=" + fmt(starts[i]) + ": " + fmt(medians[i]);
    }
    CriterionResult dec = check("median pseudo_gap strictly decreasing", "Y is an asymptotic pseudotrajectory of x' = (1-x^2)/2",
                                worst, "<", 1.0);
    dec.note = "largest successive ratio; " + trail;
    s.add(dec);

    std::size_t high = 0;
    for (const auto& r : records) {
        if (*r.checkpoints.at(checkpoint_index(r, terminal_check)).scalar > 0.9) ++high;
    }
    CriterionResult end = count_check("Y(" + fmt(terminal_check) + ") > 0.9", "Y_t -> 1", high, records.size(), 0.95);
    s.add(end);
}

void phi_process(Session& s)
{
    const double t_end = s.horizon(100.0);
    const double phi0 = 2.0;
    const std::size_t n_traj = s.count(1000);
    std::vector<double> times;
    for (double t : {10.0, 50.0, 100.0}) {
        if (t <= t_end + 1e-9) times.push_back(t);
    }
    if (times.empty()) times.push_back(t_end);

    PhiProcess phi;
    phi.n = 1;
    phi.phi0 = phi0;
    SimConfig fc = base_config(phi, WeightSchedule::raw(-1.0), t_end);
    fc.checkpoint_times = times;
    TimeChangedYProcess y;
    y.n = 1;
    y.c = 1.0;
    y.time_change = TimeChange(TimeChange::Form::SqrtTwo);
    y.y0 = std::cos(phi0);
    SimConfig yc = base_config(y, WeightSchedule::raw(-1.0), t_end);
    yc.checkpoint_times = times;

    const auto fr = s.run("phi sqrt-two", fc, n_traj);
    const auto yr = s.run("Y sqrt-two", yc, n_traj);
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<double> cosphi = column(fr, k, Observable::Scalar);
        for (double& v : cosphi) v = std::cos(v);
        const MeanStderr a = mean_stderr(cosphi);
        const MeanStderr b = mean_stderr(column(yr, k, Observable::Scalar));
        CriterionResult r = check("mean cos(phi) vs Y t=" + fmt(times[k]), "cos(phi) solves the Y equation weakly",
                                  relative_gap(a, b), "<=", 2.0);
        r.note = "cos(phi) " + fmt(a.mean) + ", Y " + fmt(b.mean) + " (gap in combined SE)";
        s.add(r);
    }
}

void ou_decay(Session& s)
{
    const std::size_t n_traj = s.count(10000);
    {
        const double t_end = s.horizon(10000.0);
        OuDecayProcess p;
        p.lambda = 1.0;
        p.eps = NoiseSchedule::power(1.0, 1.0);
        SimConfig cfg = base_config(p, WeightSchedule::raw(-1.0), t_end);
        cfg.h = 1.0;
        for (double t : {100.0, 1000.0, 10000.0}) {
            if (t <= t_end + 1e-9) cfg.checkpoint_times.push_back(t);
        }
        if (cfg.checkpoint_times.empty()) cfg.checkpoint_times.push_back(t_end);
        const auto records = s.run("OU eps=(1+t)^-1", cfg, n_traj);
        for (std::size_t k = 0; k < cfg.checkpoint_times.size(); ++k) {
            const double t = records.front().checkpoints.at(k).t;
            std::vector<double> scaled = column(records, k, Observable::Scalar);
            const double envelope = std::sqrt(std::log(t) / t);
            for (double& v : scaled) v = std::abs(v) / envelope;
            s.add(check("q95 |X| / (t^-1/2 sqrt(log t)) t=" + fmt(t), "|X_t| = O(t^-1/2 sqrt(log t))",
                        quantile(scaled, 0.95), "<=", 5.0));
        }
    }
    {
        const double t_end = std::min(s.horizon(10.0), 10.0);
        OuDecayProcess p;
        p.lambda = 1.0;
        p.eps = NoiseSchedule::exponential(1.0, 4.0);
        SimConfig cfg = base_config(p, WeightSchedule::raw(-1.0), t_end);
        cfg.h = 1.0;
        for (double t : {2.0, 5.0, 10.0}) {
            if (t <= t_end + 1e-9) cfg.checkpoint_times.push_back(t);
        }
        if (cfg.checkpoint_times.empty()) cfg.checkpoint_times.push_back(t_end);
        const auto records = s.run("OU eps=exp(-4t)", cfg, n_traj);
        for (std::size_t k = 0; k < cfg.checkpoint_times.size(); ++k) {
            const double t = records.front().checkpoints.at(k).t;
            std::vector<double> scaled = column(records, k, Observable::Scalar);
            for (double& v : scaled) v = std::abs(v) * std::exp(t);
            s.add(check("q95 |X| e^t t=" + fmt(t), "|X_t| = O(e^-lambda t)", quantile(scaled, 0.95), "<", 5.0));
        }
    }
}

void conjecture_multimode(Session& s)
{
    const double t_end = s.horizon(500.0);
    CircleProcess p;
    p.modes = {{1, -1.0}, {2, 0.2}};
    SimConfig cfg = base_config(p, WeightSchedule::raw(1.0), t_end);
    cfg.checkpoint_times = uniform_grid(0.0, t_end, 1.0);
    const auto records = s.run("circle modes 1:-1,2:0.2", cfg, s.count(20));
    for (const double frac : {0.2, 1.0}) {
        const double horizon = frac * t_end;
        std::vector<double> ranges;
        for (const auto& r : records) {
            double lo = INFINITY, hi = -INFINITY;
            for (const Checkpoint& c : r.checkpoints) {
                if (c.t > horizon + 1e-9) break;
                lo = std::min(lo, *c.theta);
                hi = std::max(hi, *c.theta);
            }
            ranges.push_back(hi - lo);
        }
        CriterionResult r = check("median range(theta) up to t=" + fmt(horizon), "range of the unwrapped angle",
                                  quantile(ranges, 0.5), ">=", 0.0, false);
        r.note = "exploratory";
        s.add(r);
    }
}

using PresetFn = void (*)(Session&);

const std::map<std::string, PresetFn>& registry()
{
    static const std::map<std::string, PresetFn> table{
        {"attract-circle", attract_circle},
        {"attract-sphere-n", attract_sphere},
        {"repulse-circle", repulse_circle},
        {"blr-normalized", blr_normalized},
        {"raimond-weighted", raimond_weighted},
        {"polar-direct", polar_direct},
        {"timechanged-y", timechanged_y},
        {"phi-process", phi_process},
        {"ou-decay", ou_decay},
        {"conjecture-multimode", conjecture_multimode},
        {"martingale-identity", martingale_identity},
    };
    return table;
}

}  // namespace

bool VerificationReport::passed() const noexcept
{
    return std::all_of(criteria.begin(), criteria.end(),
                       [](const CriterionResult& c) { return c.pass || !c.gating; });
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

bool is_preset(const std::string& name) { return registry().count(name) != 0; }

SimConfig preset_config(const std::string& name, std::uint64_t master_seed)
{
    SimConfig cfg;
    if (name == "attract-circle") {
        cfg = base_config(CircleProcess{}, WeightSchedule::raw(-1.0), 10000.0);
    } else if (name == "attract-sphere-n" || name == "martingale-identity") {
        cfg = base_config(sphere_from_pole(2), WeightSchedule::raw(-1.0),
                          name == "martingale-identity" ? 1.0 : 2000.0);
    } else if (name == "repulse-circle") {
        cfg = base_config(CircleProcess{}, WeightSchedule::raw(1.0), 500.0);
    } else if (name == "blr-normalized") {
        cfg = base_config(CircleProcess{}, WeightSchedule::normalized(-3.0, 1.0), 10000.0);
    } else if (name == "raimond-weighted") {
        cfg = base_config(CircleProcess{},
                          WeightSchedule::weighted(-1.0, GrowthFunction::logarithmic(1.0), 1.0), 2000.0);
    } else if (name == "polar-direct") {
        PolarProcess p;
        cfg = base_config(p, WeightSchedule::raw(-1.0), 5.0);
    } else if (name == "timechanged-y") {
        cfg = base_config(TimeChangedYProcess{}, WeightSchedule::raw(-1.0), 10005.0);
    } else if (name == "phi-process") {
        PhiProcess p;
        p.phi0 = 2.0;
        cfg = base_config(p, WeightSchedule::raw(-1.0), 100.0);
    } else if (name == "ou-decay") {
        cfg = base_config(OuDecayProcess{}, WeightSchedule::raw(-1.0), 10000.0);
        cfg.h = 1.0;
    } else if (name == "conjecture-multimode") {
        CircleProcess p;
        p.modes = {{1, -1.0}, {2, 0.2}};
        cfg = base_config(p, WeightSchedule::raw(1.0), 500.0);
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    cfg.seed = master_seed;
    return cfg;
}

VerificationReport verify_preset(const std::string& name, std::uint64_t master_seed,
                                 const PresetOptions& options)
{
    const auto it = registry().find(name);
    if (it == registry().end()) throw ConfigError("unknown preset '" + name + "'");
    if (!(options.step_scale > 0.0)) throw ConfigError("step scale must be positive");

    VerificationReport report;
    report.preset = name;
    report.master_seed = master_seed;
    if (name == "conjecture-multimode") {
        report.exploratory = true;
        report.note = "exploratory: no acceptance bound";
    }
    const auto start = std::chrono::steady_clock::now();
    Session session(report, options);
    it->second(session);
    if (options.timed) {
        report.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return report;
}

}  // namespace sid
