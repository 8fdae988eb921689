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

// Runs every acceptance criterion and prints one verdict line per criterion.
//   sid_acceptance [--only 3,4] [--seed N] [--workers N]

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sid/ensemble.hpp"
#include "sid/flows.hpp"
#include "sid/io.hpp"
#include "sid/memory_drift.hpp"
#include "sid/observables.hpp"
#include "sid/presets.hpp"

using namespace sid;

namespace {

constexpr double kPi = std::numbers::pi;

struct Line {
    std::string text;
    bool pass;
    bool gating = true;
};

struct Verdict {
    std::vector<Line> lines;

    void add(std::string text, bool pass, bool gating = true) { lines.push_back({std::move(text), pass, gating}); }
    bool pass() const
    {
        for (const Line& l : lines) {
            if (l.gating && !l.pass) return false;
        }
        return !lines.empty();
    }
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

void take(Verdict& v, const VerificationReport& report, const std::string& filter = "")
{
    for (const CriterionResult& c : report.criteria) {
        if (!filter.empty() && c.id.find(filter) == std::string::npos) continue;
        std::string text = report.preset + " " + c.id + ": " + format_double(c.measured) + " " + c.relation +
                           " " + format_double(c.threshold);
        if (!c.note.empty()) text += " (" + c.note + ")";
        v.add(text, c.pass, c.gating);
    }
}

// 1: fast accumulators against the literal O(N) drift at every step.
Verdict accumulator_oracle(std::uint64_t seed)
{
    Verdict v;
    RandomStream rng(derive_seed(seed, 1));
    const double h = 1e-3;
    double circle_worst = 0.0;
    for (int path = 0; path < 50; ++path) {
        std::vector<FourierMode> modes{{1, 0.0}, {2, 0.0}, {3, 0.0}};
        for (FourierMode& m : modes) m.amplitude = 2.0 * rng.uniform() - 1.0;
        const WeightSchedule sched = path % 2 ? WeightSchedule::raw(-1.0) : WeightSchedule::normalized(-2.0, 0.0);
        FourierMemory mem(modes);
        std::vector<PathSample> samples{{0.0, 2.0 * kPi * rng.uniform()}};
        for (int k = 1; k <= 1000; ++k) {
            const double prev = samples.back().value;
            mem.accumulate(prev, h);
            samples.push_back({k * h, prev + 0.05 * rng.normal()});
            const double fast = circle_drift(mem, samples.back().value, sched);
            const double slow = brute_force_circle(samples, samples.back().value, modes, sched);
            circle_worst = std::max(circle_worst, std::abs(fast - slow));
        }
    }
    v.add("circle: 50 paths x 1000 steps, modes {1,2,3}, worst |fast - brute| = " + fmt(circle_worst) + " <= 1e-9",
          circle_worst <= 1e-9);

    double sphere_worst = 0.0;
    for (int path = 0; path < 50; ++path) {
        const std::size_t n = 1 + path % 3;
        const WeightSchedule sched = WeightSchedule::raw(path % 2 ? -1.0 : 1.0);
        SpherePoint x = sample_uniform(n, rng);
        SphereMemory mem(n + 1);
        std::vector<double> times;
        std::vector<SpherePoint> history;
        for (int k = 0; k <= 1000; ++k) {
            times.push_back(k * h);
            history.push_back(x);
            const Vector fast = sphere_drift(mem, x, sched);
            const Vector slow = brute_force_sphere(times, history, x, sched);
            for (std::size_t j = 0; j <= n; ++j) sphere_worst = std::max(sphere_worst, std::abs(fast[j] - slow[j]));
            mem.accumulate(x, h);
            Vector next = x.vec();
            for (double& c : next) c += 0.05 * rng.normal();
            x = renormalize(std::move(next));
        }
    }
    v.add("sphere: 50 paths x 1000 steps, n in {1,2,3}, worst |fast - brute| = " + fmt(sphere_worst) + " <= 1e-9",
          sphere_worst <= 1e-9);
    return v;
}

bool gating_pass(const VerificationReport& r, const std::string& filter)
{
    for (const CriterionResult& c : r.criteria) {
        if (c.gating && c.id.find(filter) != std::string::npos && !c.pass) return false;
    }
    return true;
}

// 11: criteria 2-4 verdicts at h and h/2.
Verdict step_robustness(std::uint64_t seed, const PresetOptions& base)
{
    Verdict v;
    PresetOptions half = base;
    half.step_scale = 0.5;
    const VerificationReport m1 = verify_preset("martingale-identity", seed, base);
    const VerificationReport m2 = verify_preset("martingale-identity", seed, half);
    for (const char* dim : {"n=1", "n=2"}) {
        const std::string filter = std::string("martingale ") + dim;
        const bool a = gating_pass(m1, filter);
        const bool b = gating_pass(m2, filter);
        v.add(std::string("criterion 2 ") + dim + " (full ensemble): h " + (a ? "pass" : "fail") + ", h/2 " +
                  (b ? "pass" : "fail"),
              a == b);
    }
    PresetOptions subset = base;
    subset.trajectories = 25;
    PresetOptions subset_half = subset;
    subset_half.step_scale = 0.5;
    const VerificationReport s1 = verify_preset("attract-sphere-n", seed, subset);
    const VerificationReport s2 = verify_preset("attract-sphere-n", seed, subset_half);
    for (std::size_t i = 0; i < s1.criteria.size() && i < s2.criteria.size(); ++i) {
        const CriterionResult& a = s1.criteria[i];
        const CriterionResult& b = s2.criteria[i];
        v.add("25 seeds, " + a.id + ": h " + a.note + (a.pass ? " pass" : " fail") + ", h/2 " + b.note +
                  (b.pass ? " pass" : " fail"),
              a.pass == b.pass);
    }
    return v;
}

// 12: module invariants, run inline.
Verdict properties(std::uint64_t seed)
{
    Verdict v;
    RandomStream rng(derive_seed(seed, 12));

    double ortho = 0.0, chord = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + i % 4;
        const SpherePoint x = sample_uniform(n, rng);
        const SpherePoint y = sample_uniform(n, rng);
        Vector w(n + 1);
        for (double& c : w) c = rng.normal();
        ortho = std::max(ortho, std::abs(dot(project_tangent(x, w), x.vec())));
        const double d = geodesic_distance(x, y);
        chord = std::max(chord, std::abs(norm(x.vec() - y.vec()) - 2.0 * std::sin(d / 2.0)));
    }
    v.add("geometry: worst |<P_x w, x>| = " + fmt(ortho) + ", worst chord identity error = " + fmt(chord) + " <= 1e-12",
          ortho <= 1e-12 && chord <= 1e-12);

    auto residual = [&](double h) {
        RandomStream local(derive_seed(seed, 13));
        SphereState s{0.0, SpherePoint::basis(3, 0), SphereMemory(3)};
        double worst = 0.0;
        for (long k = 0; k < std::lround(1.0 / h); ++k) {
            const Vector u = s.mem.sum;
            const Vector x = s.x.vec();
            step_sphere(s, WeightSchedule::raw(-1.0), 1.0, h, SphereScheme::ProjectRenormalize, local);
            worst = std::max(worst, std::abs(dot(s.mem.sum, s.mem.sum) - dot(u, u) - 2.0 * dot(u, x) * h));
        }
        return worst;
    };
    const double order = std::log2(residual(2e-3) / residual(1e-3));
    v.add("memory-radius residual order " + fmt(order) + " >= 1.9", order >= 1.9);

    SimConfig cfg;
    SphereProcess sp;
    sp.n = 2;
    cfg.process = sp;
    cfg.t_end = 50.0;
    cfg.checkpoint_times = uniform_grid(0.5, 50.0, 0.5);
    cfg.seed = derive_seed(seed, 14);
    double polar_gap = 0.0;
    for (const TrajectoryRecord& r : run_records(cfg, 20, 1)) {
        for (const Checkpoint& c : r.checkpoints) {
            const double theta = *c.alignment;
            polar_gap = std::max(polar_gap, std::abs(norm(c.position - theta * c.direction) -
                                                     std::sqrt(std::max(0.0, 1.0 - theta * theta))));
        }
    }
    v.add("|X - Theta V| = sqrt(1 - Theta^2): worst error " + fmt(polar_gap) + " <= 1e-10", polar_gap <= 1e-10);

    PolarState ps{0.0, 0.0, 1.0};
    double integral = 0.0;
    for (int k = 0; k < 100000; ++k) {
        integral += ps.alignment * 1e-3;
        step_polar(ps, 2, 1e-3, rng);
    }
    const double r_gap = std::abs(ps.radius - 1.0 - integral);
    v.add("polar R identity: |R_t - R_0 - sum Theta h| = " + fmt(r_gap) + " <= 1e-8 t", r_gap <= 1e-8 * ps.t);

    double semigroup = 0.0, order_breaks = 0.0;
    bool fixed = true;
    for (FlowKind kind : {FlowKind::Logistic, FlowKind::Pendulum}) {
        double prev = -INFINITY;
        for (double x = -0.99; x <= 0.99; x += 0.01) {
            semigroup = std::max(semigroup, std::abs(flow(kind, 2.0, x) - flow(kind, 0.7, flow(kind, 1.3, x))));
            const double y = flow(kind, 1.0, x);
            if (!(y > prev)) order_breaks += 1.0;
            prev = y;
        }
    }
    for (double h : {0.5, 5.0}) {
        fixed = fixed && flow(FlowKind::Logistic, h, 1.0) == 1.0 && flow(FlowKind::Logistic, h, -1.0) == -1.0 &&
                flow(FlowKind::Pendulum, h, 0.0) == 0.0 && flow(FlowKind::Pendulum, h, kPi) == kPi;
    }
    v.add("flows: semigroup error " + fmt(semigroup) + " <= 1e-10, order preserved, fixed points exact",
          semigroup <= 1e-10 && order_breaks == 0.0 && fixed);

    std::vector<double> grid;
    for (int i = -100; i <= 100; ++i) grid.push_back(i * kPi / 200);
    bool contraction = true;
    for (double window : {0.1, 1.0, 10.0}) contraction = contraction && contraction_bound_check(grid, window, 1.0 / kPi).holds;
    v.add("pendulum contraction |Phi_T(x)| <= e^{-T/pi}|x| on [-pi/2, pi/2]", contraction);
    const ContractionReport literal = contraction_bound_check(grid, 1.0);
    v.add("pendulum contraction at rate 2/pi: worst ratio " + fmt(literal.worst_ratio) +
              (literal.holds ? " (holds)" : " (fails; the field's 1/2 halves the rate)"),
          literal.holds, false);

    SimConfig ec = preset_config("attract-sphere-n", seed);
    ec.t_end = 5.0;
    ec.checkpoint_times = {1.0, 5.0};
    std::ostringstream serial, parallel;
    write_summary_csv(serial, run_ensemble(ec, 8, 1));
    write_summary_csv(parallel, run_ensemble(ec, 8, 4));
    v.add("ensemble summaries with 1 and 4 workers are byte-identical", serial.str() == parallel.str());
    return v;
}

std::set<int> parse_only(const std::string& text)
{
    std::set<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.insert(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    std::uint64_t seed = kDefaultMasterSeed;
    std::size_t workers = 0;
    std::string only;
    app.add_option("--seed", seed, "master seed");
    app.add_option("--workers", workers, "worker threads (0: SID_WORKERS or hardware)");
    app.add_option("--only", only, "comma-separated criterion numbers");
    CLI11_PARSE(app, argc, argv);
    const std::set<int> selected = only.empty() ? std::set<int>{} : parse_only(only);

    PresetOptions opt;
    opt.workers = workers;
    std::optional<VerificationReport> sphere_runs;
    auto attract_sphere = [&]() -> const VerificationReport& {
        if (!sphere_runs) sphere_runs = verify_preset("attract-sphere-n", seed, opt);
        return *sphere_runs;
    };

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"accumulator oracle equivalence", [&] { return accumulator_oracle(seed); }},
        {"exponential martingale identity", [&] {
             Verdict v;
             take(v, verify_preset("martingale-identity", seed, opt));
             return v;
         }},
        {"R_t / sqrt(t) stays above 0.9 (attract-sphere-n)", [&] {
             Verdict v;
             take(v, attract_sphere(), "liminf");
             return v;
         }},
        {"Theta_t -> 1 and R_t / t -> 1 (attract-sphere-n)", [&] {
             Verdict v;
             take(v, attract_sphere(), "terminal");
             return v;
         }},
        {"circle convergence rate (attract-circle)", [&] {
             Verdict v;
             take(v, verify_preset("attract-circle", seed, opt), "slope");
             return v;
         }},
        {"uniform terminal law (repulse-circle)", [&] {
             Verdict v;
             take(v, verify_preset("repulse-circle", seed, opt));
             return v;
         }},
        {"normalized occupation measures (blr-normalized)", [&] {
             Verdict v;
             take(v, verify_preset("blr-normalized", seed, opt));
             return v;
         }},
        {"weak-solution equivalence (phi-process)", [&] {
             Verdict v;
             take(v, verify_preset("phi-process", seed, opt));
             return v;
         }},
        {"pseudotrajectory gap decreases (timechanged-y)", [&] {
             Verdict v;
             take(v, verify_preset("timechanged-y", seed, opt), "pseudo_gap");
             return v;
         }},
        {"decaying-noise OU bounds (ou-decay)", [&] {
             Verdict v;
             take(v, verify_preset("ou-decay", seed, opt));
             return v;
         }},
        {"verdicts of 2-4 unchanged under h -> h/2", [&] { return step_robustness(seed, opt); }},
        {"property suites", [&] { return properties(seed); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.add(std::string("error: ") + e.what(), false);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (const Line& l : v.lines) {
            std::cout << "    " << (l.gating ? (l.pass ? "[PASS] " : "[FAIL] ") : "[info] ") << l.text << "\n";
        }
        const bool pass = v.pass();
        if (!pass) ++failed;
        std::cout << "criterion " << id << " " << (pass ? "PASS" : "FAIL") << ": " << criteria[i].first << " ("
                  << fmt(secs) << " s)" << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failed ? 1 : 0;
}
