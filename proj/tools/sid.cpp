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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sid/ensemble.hpp"
#include "sid/errors.hpp"
#include "sid/io.hpp"
#include "sid/presets.hpp"

namespace {

struct Overrides {
    std::string preset;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> t_end;
    std::optional<double> dt;
    std::optional<std::size_t> dim;
    std::optional<double> a;
    std::optional<double> sigma;
    std::optional<std::string> schedule;
    std::optional<std::string> modes;
    std::optional<double> every;
    std::size_t trajectories = 100;
    std::optional<std::size_t> workers;
    std::string out;
    std::string format;
    std::string per_trajectory;
    bool timed = false;
};

sid::WeightSchedule rebuild(const sid::WeightSchedule& old, const std::optional<std::string>& kind,
                            const std::optional<double>& coupling)
{
    using K = sid::WeightSchedule::Kind;
    K k = old.kind();
    if (kind) {
        if (*kind == "raw") k = K::Raw;
        else if (*kind == "normalized") k = K::Normalized;
        else if (*kind == "weighted") k = K::Weighted;
        else throw sid::ConfigError("--schedule must be raw, normalized or weighted");
    }
    const double c = coupling.value_or(old.coupling());
    const double onset = old.kind() == K::Raw ? 1.0 : old.onset();
    switch (k) {
    case K::Raw: return sid::WeightSchedule::raw(c);
    case K::Normalized: return sid::WeightSchedule::normalized(c, onset);
    case K::Weighted:
        return sid::WeightSchedule::weighted(c, old.growth().value_or(sid::GrowthFunction::logarithmic(1.0)), onset);
    }
    return old;
}

void set_dim(sid::Process& process, std::size_t n)
{
    if (auto* p = std::get_if<sid::SphereProcess>(&process)) {
        p->n = n;
        if (p->x0 && p->x0->size() != n + 1) p->x0 = sid::Vector::basis(n + 1, 0);
        if (p->u0 && p->u0->size() != n + 1) p->u0.reset();
    } else if (auto* q = std::get_if<sid::PolarProcess>(&process)) {
        q->n = n;
    } else if (auto* y = std::get_if<sid::TimeChangedYProcess>(&process)) {
        y->n = n;
    } else if (auto* f = std::get_if<sid::PhiProcess>(&process)) {
        f->n = n;
    } else {
        throw sid::ConfigError("--dim does not apply to the " + sid::process_name(process) + " process");
    }
}

sid::SimConfig build_config(const Overrides& o, bool dense)
{
    sid::SimConfig cfg;
    if (!o.config.empty()) cfg = sid::load_config(o.config);
    else if (!o.preset.empty()) cfg = sid::preset_config(o.preset);
    else cfg.process = sid::CircleProcess{};

    if (o.seed) cfg.seed = *o.seed;
    if (o.dt) cfg.h = *o.dt;
    if (o.sigma) cfg.sigma = *o.sigma;
    if (o.dim) set_dim(cfg.process, *o.dim);
    if (o.schedule || o.a) cfg.schedule = rebuild(cfg.schedule, o.schedule, o.a);
    if (o.modes) {
        auto* circle = std::get_if<sid::CircleProcess>(&cfg.process);
        if (!circle) throw sid::ConfigError("--modes applies to the circle process only");
        circle->modes = sid::parse_modes(*o.modes);
    }
    if (o.t_end) {
        cfg.t_end = *o.t_end;
        std::erase_if(cfg.checkpoint_times, [&](double t) { return t > cfg.t_end; });
    }
    const double start = sid::start_time(cfg.process);
    if (o.every) {
        cfg.checkpoint_times = sid::uniform_grid(start, cfg.t_end, *o.every);
    } else if (dense && cfg.checkpoint_times.empty() && cfg.t_end > start) {
        cfg.checkpoint_times = sid::uniform_grid(start, cfg.t_end, (cfg.t_end - start) / 1000.0);
    }
    return cfg;
}

std::size_t workers_of(const Overrides& o) { return o.workers.value_or(sid::default_workers()); }

template <class Fn>
void emit(const std::string& path, Fn&& fn)
{
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw sid::ConfigError("cannot write '" + path + "'");
    fn(out);
}

int run_simulate(const Overrides& o)
{
    const sid::SimConfig cfg = build_config(o, true);
    const sid::TrajectoryRecord record = sid::run_trajectory(cfg);
    emit(o.out, [&](std::ostream& os) {
        if (o.format == "json") sid::write_trajectory_json(os, record);
        else sid::write_trajectory_csv(os, record);
    });
    return 0;
}

int run_ensemble_cmd(const Overrides& o)
{
    const sid::SimConfig cfg = build_config(o, false);
    const auto records = sid::run_records(cfg, o.trajectories, workers_of(o));
    const sid::EnsembleSummary summary = sid::summarize(records);
    emit(o.out, [&](std::ostream& os) {
        if (o.format == "json") sid::write_summary_json(os, summary);
        else sid::write_summary_csv(os, summary);
    });
    if (!o.per_trajectory.empty()) {
        std::filesystem::create_directories(o.per_trajectory);
        for (std::size_t i = 0; i < records.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "traj_%05zu.csv", i);
            std::ofstream out(std::filesystem::path(o.per_trajectory) / name);
            sid::write_trajectory_csv(out, records[i]);
        }
    }
    return 0;
}

int run_verify(const Overrides& o, bool trajectories_given)
{
    if (o.preset.empty()) throw sid::ConfigError("verify needs --preset (or --preset all)");
    std::vector<std::string> names;
    if (o.preset == "all") names = sid::preset_names();
    else names.push_back(o.preset);

    sid::PresetOptions opt;
    if (trajectories_given) opt.trajectories = o.trajectories;
    opt.t_end = o.t_end;
    opt.h = o.dt;
    opt.dim = o.dim;
    opt.workers = workers_of(o);
    opt.timed = o.timed;

    bool ok = true;
    std::string json = names.size() > 1 ? "[\n" : "";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!sid::is_preset(names[i])) throw sid::ConfigError("unknown preset '" + names[i] + "'");
        const sid::VerificationReport report =
            sid::verify_preset(names[i], o.seed.value_or(sid::kDefaultMasterSeed), opt);
        ok = ok && report.passed();
        if (o.format != "json") sid::write_report_text(std::cout, report);
        json += sid::report_to_json(report);
        if (names.size() > 1) json += i + 1 < names.size() ? ",\n" : "\n]";
    }
    if (o.format == "json") std::cout << json << '\n';
    if (!o.out.empty()) emit(o.out, [&](std::ostream& os) { os << json << '\n'; });
    return ok ? 0 : 1;
}

void common_flags(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--preset", o.preset, "preset name")->check(CLI::IsMember([] {
        auto names = sid::preset_names();
        names.push_back("all");
        return names;
    }()));
    cmd->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--t-end", o.t_end, "horizon");
    cmd->add_option("--dt", o.dt, "step size");
    cmd->add_option("--dim", o.dim, "sphere dimension n")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", o.workers, "worker threads (default SID_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

void model_flags(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--a", o.a, "interaction coupling (a < 0 attracts)");
    cmd->add_option("--sigma", o.sigma, "noise scale");
    cmd->add_option("--schedule", o.schedule, "weight schedule")->check(CLI::IsMember({"raw", "normalized", "weighted"}));
    cmd->add_option("--modes", o.modes, "circle Fourier modes k1:a1,k2:a2,...");
    cmd->add_option("--every", o.every, "checkpoint spacing");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simulate self-interacting diffusions on spheres and circles."};
    app.require_subcommand(1);
    Overrides o;

    CLI::App* simulate = app.add_subcommand("simulate", "one trajectory to CSV");
    common_flags(simulate, o);
    model_flags(simulate, o);

    CLI::App* ensemble = app.add_subcommand("ensemble", "seeded ensemble to a CSV summary");
    common_flags(ensemble, o);
    model_flags(ensemble, o);
    ensemble->add_option("--trajectories", o.trajectories, "ensemble size")->check(CLI::PositiveNumber);
    ensemble->add_option("--per-trajectory", o.per_trajectory, "directory for per-trajectory CSVs");

    CLI::App* verify = app.add_subcommand("verify", "run a preset and evaluate its acceptance checks");
    common_flags(verify, o);
    CLI::Option* traj = verify->add_option("--trajectories", o.trajectories, "override ensemble sizes")
                            ->check(CLI::PositiveNumber);
    verify->add_flag("--timed", o.timed, "include wall-clock runtime in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) return run_simulate(o);
        if (*ensemble) return run_ensemble_cmd(o);
        return run_verify(o, traj->count() > 0);
    } catch (const sid::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sid::TrajectoryError& e) {
        std::cerr << "simulation failed (seed " << e.seed() << ", t = " << e.time() << "): " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
