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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sid/ensemble.hpp"
#include "sid/errors.hpp"
#include "sid/io.hpp"
#include "sid/presets.hpp"

using namespace sid;

namespace {

std::string summary_bytes(const EnsembleSummary& s)
{
    std::ostringstream out;
    write_summary_csv(out, s);
    write_summary_json(out, s);
    return out.str();
}

SimConfig small_sphere()
{
    SimConfig cfg;
    SphereProcess p;
    p.n = 2;
    cfg.process = p;
    cfg.t_end = 2.0;
    cfg.checkpoint_times = {0.5, 1.0, 2.0};
    cfg.seed = 51;
    return cfg;
}

}  // namespace

TEST_CASE("parallel and serial ensembles are byte-identical")
{
    for (const SimConfig& cfg : {small_sphere(), preset_config("attract-circle", 52)}) {
        SimConfig c = cfg;
        c.t_end = 2.0;
        c.checkpoint_times = {0.5, 1.0, 2.0};
        const EnsembleSummary serial = run_ensemble(c, 8, 1);
        const EnsembleSummary parallel = run_ensemble(c, 8, 4);
        CHECK(serial == parallel);
        CHECK(summary_bytes(serial) == summary_bytes(parallel));
        CHECK(serial.trajectories == 8);
    }
}

TEST_CASE("a one-trajectory ensemble is run_trajectory under the derived seed")
{
    SimConfig cfg = small_sphere();
    const auto records = run_records(cfg, 1, 1);
    REQUIRE(records.size() == 1);
    SimConfig single = cfg;
    single.seed = derive_seed(cfg.seed, 0);
    const TrajectoryRecord direct = run_trajectory(single);
    for (std::size_t k = 0; k < direct.checkpoints.size(); ++k) {
        CHECK(records[0].checkpoints[k].position == direct.checkpoints[k].position);
    }
    CHECK(records[0].seed == direct.seed);
}

TEST_CASE("grids")
{
    const auto g = geometric_grid(1.0, 10.0, 2.0);
    CHECK(g == std::vector<double>{1.0, 2.0, 4.0, 8.0, 10.0});
    const auto u = uniform_grid(0.0, 1.0, 0.25);
    CHECK(u == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(merge_times({1.0, 3.0}, {2.0, 3.0}) == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("preset registry and reports")
{
    const auto& names = preset_names();
    for (const char* expected : {"martingale-identity", "attract-sphere-n", "attract-circle", "repulse-circle",
                                 "blr-normalized", "raimond-weighted", "polar-direct", "timechanged-y",
                                 "phi-process", "ou-decay", "conjecture-multimode"}) {
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
        CHECK(is_preset(expected));
    }
    CHECK_FALSE(is_preset("nope"));
    CHECK_THROWS_AS(verify_preset("nope"), ConfigError);

    PresetOptions at_zero;
    at_zero.t_end = 0.0;
    at_zero.trajectories = 50;
    const VerificationReport trivial = verify_preset("martingale-identity", kDefaultMasterSeed, at_zero);
    CHECK(trivial.passed());
    CHECK_FALSE(trivial.exploratory);
    CHECK_FALSE(trivial.runtime_seconds);

    PresetOptions quick;
    quick.trajectories = 4;
    quick.t_end = 20.0;
    const VerificationReport open = verify_preset("conjecture-multimode", 7, quick);
    CHECK(open.exploratory);
    CHECK(open.note.find("exploratory: no acceptance bound") != std::string::npos);
    CHECK(std::none_of(open.criteria.begin(), open.criteria.end(), [](const auto& c) { return c.gating; }));

    const VerificationReport again = verify_preset("conjecture-multimode", 7, quick);
    CHECK(report_to_json(open) == report_to_json(again));

    std::ostringstream text;
    write_report_text(text, trivial);
    CHECK(text.str().find("[PASS]") != std::string::npos);
}

TEST_CASE("modes parsing")
{
    const auto modes = parse_modes("1:-1,2:0.2");
    REQUIRE(modes.size() == 2);
    CHECK(modes[0].k == 1);
    CHECK(modes[0].amplitude == -1.0);
    CHECK(modes[1].k == 2);
    CHECK(modes[1].amplitude == 0.2);
    CHECK_THROWS_AS(parse_modes("1:-1,"), ConfigError);
    CHECK_THROWS_AS(parse_modes("0:1"), ConfigError);
    CHECK_THROWS_AS(parse_modes("1-1"), ConfigError);
    CHECK_THROWS_AS(parse_modes(""), ConfigError);
}

TEST_CASE("config round trip")
{
    const SimConfig cfg = parse_config(R"({
        "process": {"type": "circle", "modes": "1:-1,3:0.5", "theta0": 0.25},
        "schedule": {"kind": "weighted", "coupling": -2, "onset": 1, "growth": {"kind": "log", "parameter": 1}},
        "sigma": 0.5, "h": 0.01, "t_end": 10, "seed": 9,
        "checkpoints": {"geometric": {"first": 1, "ratio": 2}}
    })");
    CHECK(process_name(cfg.process) == "circle");
    CHECK(cfg.sigma == 0.5);
    CHECK(cfg.schedule.kind() == WeightSchedule::Kind::Weighted);
    CHECK(cfg.schedule.weight(2.0) == doctest::Approx(-2.0 * std::log(3.0) / 2.0));
    CHECK(cfg.checkpoint_times == std::vector<double>{1.0, 2.0, 4.0, 8.0, 10.0});
    const SimConfig back = parse_config(config_to_json(cfg));
    CHECK(describe(back) == describe(cfg));

    for (const char* text : {R"({"process": {"type": "sphere", "n": 3, "scheme": "ito"}, "t_end": 2})",
                             R"({"process": {"type": "polar", "n": 2, "alignment0": 0.1, "radius0": 2}})",
                             R"({"process": {"type": "timechanged-y", "time_change": "sqrt-two", "c": 2}})",
                             R"({"process": {"type": "phi", "phi0": 2}})",
                             R"({"process": {"type": "ou-decay", "lambda": 2,
                                 "eps": {"family": "log-power", "scale": 1, "exponent": 2}}})"}) {
        const SimConfig c = parse_config(text);
        CHECK(describe(parse_config(config_to_json(c))) == describe(c));
    }

    CHECK_THROWS_AS(parse_config(R"({"process": {"type": "circle"}, "sigmaa": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"process": {"type": "torus"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("number and record formatting")
{
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0}) CHECK(std::stod(format_double(x)) == x);

    SimConfig cfg = small_sphere();
    const TrajectoryRecord r = run_trajectory(cfg);
    std::ostringstream csv;
    write_trajectory_csv(csv, r);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,Theta,R,V_0,V_1,V_2,X_0,X_1,X_2");
    std::string row;
    int rows = 0;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 3);

    SimConfig circle;
    circle.t_end = 1.0;
    std::ostringstream ccsv;
    write_trajectory_csv(ccsv, run_trajectory(circle));
    CHECK(ccsv.str().rfind("t,theta,Theta,R,V_0,V_1,X_0,X_1\n", 0) == 0);
}
