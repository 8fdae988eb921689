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

#include "sid/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "sid/ensemble.hpp"
#include "sid/errors.hpp"

namespace sid {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback)
{
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

Vector vector_from(const json& v, const char* key)
{
    if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array of numbers");
    std::vector<double> xs;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(std::string("'") + key + "' must be an array of numbers");
        xs.push_back(e.get<double>());
    }
    return Vector(std::move(xs));
}

TimeChange time_change_from(const json& obj, TimeChange fallback)
{
    const auto it = obj.find("time_change");
    if (it == obj.end()) return fallback;
    const std::string name = it->is_string() ? it->get<std::string>() : "";
    if (name == "cube-root") return TimeChange(TimeChange::Form::CubeRoot);
    if (name == "sqrt-two") return TimeChange(TimeChange::Form::SqrtTwo);
    throw ConfigError("time_change must be cube-root or sqrt-two");
}

std::string time_change_name(const TimeChange& tc)
{
    return tc.form() == TimeChange::Form::CubeRoot ? "cube-root" : "sqrt-two";
}

std::vector<FourierMode> modes_from(const json& v)
{
    if (v.is_string()) return parse_modes(v.get<std::string>());
    if (!v.is_array()) throw ConfigError("'modes' must be a string or an array of [k, a] pairs");
    std::vector<FourierMode> out;
    for (const auto& pair : v) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number()) {
            throw ConfigError("'modes' must be a string or an array of [k, a] pairs");
        }
        out.push_back({pair[0].get<int>(), pair[1].get<double>()});
    }
    return out;
}

NoiseSchedule noise_from(const json& obj)
{
    require_keys(obj, {"family", "scale", "exponent"}, "eps");
    const std::string family = get_or<std::string>(obj, "family", "power");
    const double scale = get_or(obj, "scale", 1.0);
    const double exponent = get_or(obj, "exponent", 1.0);
    if (family == "power") return NoiseSchedule::power(scale, exponent);
    if (family == "log-power") return NoiseSchedule::log_power(scale, exponent);
    if (family == "exponential") return NoiseSchedule::exponential(scale, exponent);
    if (family == "constant") return NoiseSchedule::constant(scale);
    throw ConfigError("unknown eps family '" + family + "'");
}

Process process_from(const json& obj)
{
    if (!obj.is_object()) throw ConfigError("'process' must be an object");
    const std::string type = get_or<std::string>(obj, "type", "");
    if (type == "sphere") {
        require_keys(obj, {"type", "n", "x0", "u0", "random_start", "scheme"}, "sphere process");
        SphereProcess p;
        p.n = get_or<std::size_t>(obj, "n", p.n);
        if (obj.contains("x0")) p.x0 = vector_from(obj["x0"], "x0");
        if (obj.contains("u0")) p.u0 = vector_from(obj["u0"], "u0");
        p.random_start = get_or(obj, "random_start", false);
        const std::string scheme = get_or<std::string>(obj, "scheme", "project");
        if (scheme == "project") p.scheme = SphereScheme::ProjectRenormalize;
        else if (scheme == "ito") p.scheme = SphereScheme::ItoCorrected;
        else throw ConfigError("scheme must be project or ito");
        return p;
    }
    if (type == "circle") {
        require_keys(obj, {"type", "modes", "theta0"}, "circle process");
        CircleProcess p;
        if (obj.contains("modes")) p.modes = modes_from(obj["modes"]);
        p.theta0 = get_or(obj, "theta0", 0.0);
        return p;
    }
    if (type == "polar") {
        require_keys(obj, {"type", "n", "alignment0", "radius0"}, "polar process");
        PolarProcess p;
        p.n = get_or<std::size_t>(obj, "n", p.n);
        p.alignment0 = get_or(obj, "alignment0", p.alignment0);
        p.radius0 = get_or(obj, "radius0", p.radius0);
        return p;
    }
    if (type == "timechanged-y") {
        require_keys(obj, {"type", "n", "c", "time_change", "y0", "t0"}, "timechanged-y process");
        TimeChangedYProcess p;
        p.n = get_or<std::size_t>(obj, "n", p.n);
        p.c = get_or(obj, "c", p.c);
        p.time_change = time_change_from(obj, p.time_change);
        p.y0 = get_or(obj, "y0", p.y0);
        p.t0 = get_or(obj, "t0", p.t0);
        return p;
    }
    if (type == "phi") {
        require_keys(obj, {"type", "n", "time_change", "phi0", "t0"}, "phi process");
        PhiProcess p;
        p.n = get_or<std::size_t>(obj, "n", p.n);
        p.time_change = time_change_from(obj, p.time_change);
        p.phi0 = get_or(obj, "phi0", p.phi0);
        p.t0 = get_or(obj, "t0", p.t0);
        return p;
    }
    if (type == "ou-decay") {
        require_keys(obj, {"type", "lambda", "eps", "x0"}, "ou-decay process");
        OuDecayProcess p;
        p.lambda = get_or(obj, "lambda", p.lambda);
        if (obj.contains("eps")) p.eps = noise_from(obj["eps"]);
        p.x0 = get_or(obj, "x0", p.x0);
        return p;
    }
    throw ConfigError("unknown process type '" + type + "'");
}

GrowthFunction growth_from(const json& obj)
{
    require_keys(obj, {"kind", "parameter"}, "growth");
    const std::string kind = get_or<std::string>(obj, "kind", "log");
    if (kind == "log") return GrowthFunction::logarithmic(get_or(obj, "parameter", 1.0));
    if (kind == "power") return GrowthFunction::power(get_or(obj, "parameter", 0.5));
    if (kind == "constant") return GrowthFunction::constant(get_or(obj, "parameter", 1.0));
    throw ConfigError("unknown growth kind '" + kind + "'");
}

WeightSchedule schedule_from(const json& obj)
{
    require_keys(obj, {"kind", "coupling", "onset", "growth"}, "schedule");
    const std::string kind = get_or<std::string>(obj, "kind", "raw");
    const double coupling = get_or(obj, "coupling", -1.0);
    if (kind == "raw") return WeightSchedule::raw(coupling);
    const double onset = get_or(obj, "onset", 1.0);
    if (kind == "normalized") return WeightSchedule::normalized(coupling, onset);
    if (kind == "weighted") {
        const GrowthFunction g = obj.contains("growth") ? growth_from(obj["growth"]) : GrowthFunction::logarithmic(1.0);
        return WeightSchedule::weighted(coupling, g, onset);
    }
    throw ConfigError("schedule kind must be raw, normalized or weighted");
}

std::vector<double> checkpoints_from(const json& v, double start, double t_end)
{
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError("'checkpoints' entries must be numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    require_keys(v, {"geometric", "uniform"}, "checkpoints");
    if (v.contains("geometric")) {
        const json& g = v["geometric"];
        require_keys(g, {"first", "ratio"}, "geometric checkpoints");
        return geometric_grid(get_or(g, "first", 1.0), t_end, get_or(g, "ratio", 1.1));
    }
    if (v.contains("uniform")) {
        const json& u = v["uniform"];
        require_keys(u, {"first", "step"}, "uniform checkpoints");
        return uniform_grid(get_or(u, "first", start), t_end, get_or(u, "step", 1.0));
    }
    throw ConfigError("'checkpoints' needs geometric or uniform");
}

json vector_json(const Vector& v)
{
    json out = json::array();
    for (double x : v) out.push_back(x);
    return out;
}

json process_json(const Process& process)
{
    return std::visit(
        Overloaded{
            [](const SphereProcess& p) {
                json o{{"type", "sphere"}, {"n", p.n}, {"random_start", p.random_start},
                       {"scheme", p.scheme == SphereScheme::ItoCorrected ? "ito" : "project"}};
                if (p.x0) o["x0"] = vector_json(*p.x0);
                if (p.u0) o["u0"] = vector_json(*p.u0);
                return o;
            },
            [](const CircleProcess& p) {
                json modes = json::array();
                for (const FourierMode& m : p.modes) modes.push_back({m.k, m.amplitude});
                return json{{"type", "circle"}, {"modes", modes}, {"theta0", p.theta0}};
            },
            [](const PolarProcess& p) {
                return json{{"type", "polar"}, {"n", p.n}, {"alignment0", p.alignment0}, {"radius0", p.radius0}};
            },
            [](const TimeChangedYProcess& p) {
                return json{{"type", "timechanged-y"}, {"n", p.n}, {"c", p.c},
                            {"time_change", time_change_name(p.time_change)}, {"y0", p.y0}, {"t0", p.t0}};
            },
            [](const PhiProcess& p) {
                return json{{"type", "phi"}, {"n", p.n}, {"time_change", time_change_name(p.time_change)},
                            {"phi0", p.phi0}, {"t0", p.t0}};
            },
            [](const OuDecayProcess& p) {
                std::string family;
                switch (p.eps.family()) {
                case NoiseSchedule::Family::Power: family = "power"; break;
                case NoiseSchedule::Family::LogPower: family = "log-power"; break;
                case NoiseSchedule::Family::Exponential: family = "exponential"; break;
                case NoiseSchedule::Family::Constant: family = "constant"; break;
                case NoiseSchedule::Family::Custom:
                    throw ConfigError("custom noise schedules cannot be serialized");
                }
                json eps{{"family", family}, {"scale", p.eps.scale()}};
                if (p.eps.family() != NoiseSchedule::Family::Constant) eps["exponent"] = p.eps.exponent();
                return json{{"type", "ou-decay"}, {"lambda", p.lambda}, {"eps", eps}, {"x0", p.x0}};
            },
        },
        process);
}

json schedule_json(const WeightSchedule& s)
{
    json o;
    switch (s.kind()) {
    case WeightSchedule::Kind::Raw: return json{{"kind", "raw"}, {"coupling", s.coupling()}};
    case WeightSchedule::Kind::Normalized: o["kind"] = "normalized"; break;
    case WeightSchedule::Kind::Weighted: {
        o["kind"] = "weighted";
        const GrowthFunction& g = *s.growth();
        const char* kind = g.kind() == GrowthFunction::Kind::Logarithmic ? "log"
                           : g.kind() == GrowthFunction::Kind::Power     ? "power"
                                                                         : "constant";
        o["growth"] = json{{"kind", kind}, {"parameter", g.parameter()}};
        break;
    }
    }
    o["coupling"] = s.coupling();
    o["onset"] = s.onset();
    return o;
}

json number_or_null(double x)
{
    if (std::isfinite(x)) return x;
    return nullptr;
}

}  // namespace

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<FourierMode> parse_modes(std::string_view text)
{
    std::vector<FourierMode> out;
    while (!text.empty()) {
        const std::size_t comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) throw ConfigError("mode '" + std::string(item) + "' is not k:a");
        FourierMode m{};
        const std::string_view ks = item.substr(0, colon);
        const std::string_view as = item.substr(colon + 1);
        const auto rk = std::from_chars(ks.data(), ks.data() + ks.size(), m.k);
        const auto ra = std::from_chars(as.data(), as.data() + as.size(), m.amplitude);
        if (rk.ec != std::errc{} || rk.ptr != ks.data() + ks.size() || ra.ec != std::errc{} ||
            ra.ptr != as.data() + as.size() || m.k < 1) {
            throw ConfigError("mode '" + std::string(item) + "' is not k:a with integer k >= 1");
        }
        out.push_back(m);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) throw ConfigError("trailing comma in modes");
    }
    if (out.empty()) throw ConfigError("no modes given");
    return out;
}

SimConfig parse_config(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_keys(doc, {"process", "schedule", "sigma", "h", "stiffness_limit", "t_end", "checkpoints", "seed"},
                 "config");
    SimConfig cfg;
    if (doc.contains("process")) cfg.process = process_from(doc["process"]);
    if (doc.contains("schedule")) cfg.schedule = schedule_from(doc["schedule"]);
    cfg.sigma = get_or(doc, "sigma", cfg.sigma);
    cfg.h = get_or(doc, "h", cfg.h);
    cfg.stiffness_limit = get_or(doc, "stiffness_limit", cfg.stiffness_limit);
    cfg.t_end = get_or(doc, "t_end", cfg.t_end);
    cfg.seed = get_or<std::uint64_t>(doc, "seed", cfg.seed);
    if (doc.contains("checkpoints")) {
        cfg.checkpoint_times = checkpoints_from(doc["checkpoints"], start_time(cfg.process), cfg.t_end);
    }
    return cfg;
}

SimConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_to_json(const SimConfig& cfg)
{
    json doc{{"process", process_json(cfg.process)},
             {"schedule", schedule_json(cfg.schedule)},
             {"sigma", cfg.sigma},
             {"h", cfg.h},
             {"stiffness_limit", cfg.stiffness_limit},
             {"t_end", cfg.t_end},
             {"checkpoints", cfg.checkpoint_times},
             {"seed", cfg.seed}};
    return doc.dump(2);
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record)
{
    if (record.checkpoints.empty()) throw DomainError("record has no checkpoints");
    const Checkpoint& first = record.checkpoints.front();
    const bool theta = first.theta.has_value();
    const bool alignment = first.alignment.has_value();
    const bool radius = first.radius.has_value();
    const std::size_t vdim = first.direction.size();
    const std::size_t xdim = first.position.size();
    const bool scalar = first.scalar.has_value();

    out << "t";
    if (theta) out << ",theta";
    if (alignment) out << ",Theta";
    if (radius) out << ",R";
    for (std::size_t i = 0; i < vdim; ++i) out << ",V_" << i;
    for (std::size_t i = 0; i < xdim; ++i) out << ",X_" << i;
    if (scalar) out << ',' << (record.scalar_label.empty() ? "value" : record.scalar_label);
    out << '\n';

    for (const Checkpoint& c : record.checkpoints) {
        out << format_double(c.t);
        if (theta) out << ',' << format_double(*c.theta);
        if (alignment) out << ',' << format_double(*c.alignment);
        if (radius) out << ',' << format_double(*c.radius);
        for (std::size_t i = 0; i < vdim; ++i) out << ',' << format_double(c.direction[i]);
        for (std::size_t i = 0; i < xdim; ++i) out << ',' << format_double(c.position[i]);
        if (scalar) out << ',' << format_double(*c.scalar);
        out << '\n';
    }
}

void write_trajectory_json(std::ostream& out, const TrajectoryRecord& record)
{
    json rows = json::array();
    for (const Checkpoint& c : record.checkpoints) {
        json row{{"t", c.t}};
        if (c.theta) row["theta"] = *c.theta;
        if (c.alignment) row["Theta"] = *c.alignment;
        if (c.radius) row["R"] = *c.radius;
        if (c.direction.size()) row["V"] = vector_json(c.direction);
        if (c.position.size()) row["X"] = vector_json(c.position);
        if (c.scalar) row[record.scalar_label.empty() ? "value" : record.scalar_label] = *c.scalar;
        rows.push_back(std::move(row));
    }
    json doc{{"seed", record.seed}, {"config_digest", record.config_digest}, {"checkpoints", rows}};
    out << doc.dump(2) << '\n';
}

void write_summary_csv(std::ostream& out, const EnsembleSummary& summary)
{
    out << "t,observable,mean,std_error,q05,q50,q95,count\n";
    for (const CheckpointSummary& c : summary.checkpoints) {
        for (const auto& [name, s] : c.stats) {
            out << format_double(c.t) << ',' << name << ',' << format_double(s.mean) << ','
                << format_double(s.std_error) << ',' << format_double(s.q05) << ',' << format_double(s.q50)
                << ',' << format_double(s.q95) << ',' << s.count << '\n';
        }
    }
}

void write_summary_json(std::ostream& out, const EnsembleSummary& summary)
{
    json checkpoints = json::array();
    for (const CheckpointSummary& c : summary.checkpoints) {
        json stats = json::object();
        for (const auto& [name, s] : c.stats) {
            stats[name] = json{{"mean", number_or_null(s.mean)}, {"std_error", number_or_null(s.std_error)},
                               {"q05", number_or_null(s.q05)},   {"q50", number_or_null(s.q50)},
                               {"q95", number_or_null(s.q95)},   {"count", s.count}};
        }
        checkpoints.push_back(json{{"t", c.t}, {"stats", stats}});
    }
    json statistics = json::object();
    for (const auto& [name, v] : summary.statistics) statistics[name] = number_or_null(v);
    json doc{{"trajectories", summary.trajectories}, {"checkpoints", checkpoints}, {"statistics", statistics}};
    out << doc.dump(2) << '\n';
}

std::string report_to_json(const VerificationReport& report)
{
    json criteria = json::array();
    for (const CriterionResult& c : report.criteria) {
        json row{{"id", c.id},
                 {"claim", c.claim},
                 {"measured", number_or_null(c.measured)},
                 {"relation", c.relation},
                 {"threshold", number_or_null(c.threshold)},
                 {"pass", c.pass},
                 {"gating", c.gating}};
        if (!c.note.empty()) row["note"] = c.note;
        criteria.push_back(std::move(row));
    }
    json ensembles = json::array();
    for (const EnsembleRun& e : report.ensembles) {
        ensembles.push_back(json{{"label", e.label}, {"master_seed", e.master_seed},
                                 {"trajectories", e.trajectories}, {"h", e.h}});
    }
    json doc{{"preset", report.preset},
             {"master_seed", report.master_seed},
             {"exploratory", report.exploratory},
             {"passed", report.passed()},
             {"criteria", criteria},
             {"ensembles", ensembles}};
    if (!report.note.empty()) doc["note"] = report.note;
    if (report.runtime_seconds) doc["runtime_seconds"] = *report.runtime_seconds;
    return doc.dump(2);
}

void write_report_text(std::ostream& out, const VerificationReport& report)
{
    out << "preset " << report.preset << "  master seed " << report.master_seed << '\n';
    if (!report.note.empty()) out << report.note << '\n';
    for (const CriterionResult& c : report.criteria) {
        const char* tag = c.pass ? "PASS" : c.gating ? "FAIL" : "info";
        out << "  [" << tag << "] " << c.id << ": " << format_double(c.measured) << ' ' << c.relation << ' '
            << format_double(c.threshold);
        if (!c.note.empty()) out << "  (" << c.note << ')';
        out << '\n';
    }
    if (report.runtime_seconds) out << "  runtime " << format_double(*report.runtime_seconds) << " s\n";
    out << (report.passed() ? "all gating checks passed" : "some gating checks failed") << '\n';
}

}  // namespace sid
