#include "qchern/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <fmt/format.h>

#include "qchern/units.hpp"

namespace qchern {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view key, std::string_view v) {
    const std::string s(trim(v));
    try {
        std::size_t pos = 0;
        const double x = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(x)) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(std::string(key), fmt::format("expected a number, got '{}'", s));
    }
}

template <class Int>
Int parse_int(std::string_view key, std::string_view v) {
    const std::string_view s = trim(v);
    Int x{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(std::string(key), fmt::format("expected an integer, got '{}'", s));
    }
    return x;
}

bool parse_bool(std::string_view key, std::string_view v) {
    std::string s(trim(v));
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "off" || s == "no" || s == "0") return false;
    throw ConfigError(std::string(key), fmt::format("expected on/off, got '{}'", s));
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
    std::vector<double> out;
    const std::string_view body = trim(v);
    if (body.empty()) {
        throw ConfigError(std::string(key), "empty list; give at least one value");
    }
    std::size_t start = 0;
    while (start <= body.size()) {
        const std::size_t comma = body.find(',', start);
        const std::string_view item = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_double(key, item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string fmt_num(double x) { return fmt::format("{:.10g}", x); }

std::string fmt_list(const std::vector<double>& xs) {
    std::vector<std::string> parts;
    parts.reserve(xs.size());
    for (double x : xs) parts.push_back(fmt_num(x));
    return fmt::format("{}", fmt::join(parts, ","));
}

}  // namespace

std::string to_string(SweepAxis axis) { return axis == SweepAxis::delta2 ? "delta2" : "t_ramp"; }

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view value) {
    const std::string key(trim(raw_key));
    if (key == "delta1_mhz") cfg.delta1_mhz = parse_double(key, value);
    else if (key == "omega1_mhz") cfg.omega1_mhz = parse_double(key, value);
    else if (key == "delta2_mhz") cfg.delta2_mhz = parse_double(key, value);
    else if (key == "t_ramp_us") cfg.t_ramp_us = parse_double(key, value);
    else if (key == "theta_points") cfg.theta_points = parse_int<long>(key, value);
    else if (key == "n_steps") {
        cfg.n_steps = trim(value) == "auto" ? 0 : parse_int<long>(key, value);
    }
    else if (key == "dissipation") cfg.dissipation = parse_bool(key, value);
    else if (key == "t1_us") cfg.t1_us = parse_double(key, value);
    else if (key == "t2_star_us") cfg.t2_star_us = parse_double(key, value);
    else if (key == "fidelity") cfg.fidelity = parse_double(key, value);
    else if (key == "shots") {
        if (trim(value) == "exact") cfg.shots.reset();
        else cfg.shots = parse_int<long>(key, value);
    }
    else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "sweep_axis") {
        const std::string_view v = trim(value);
        if (v == "delta2") cfg.sweep_axis = SweepAxis::delta2;
        else if (v == "t_ramp") cfg.sweep_axis = SweepAxis::t_ramp;
        else throw ConfigError(key, fmt::format("expected delta2 or t_ramp, got '{}'", v));
    }
    else if (key == "sweep_values") cfg.sweep_values = parse_list(key, value);
    else if (key == "t_ramp_list_us") cfg.t_ramp_list_us = parse_list(key, value);
    else if (key == "lattice_points") cfg.lattice_points = parse_int<long>(key, value);
    else if (key == "consistency_t_start_us") cfg.consistency_t_start_us = parse_double(key, value);
    else if (key == "consistency_count") cfg.consistency_count = parse_int<int>(key, value);
    else if (key == "workers") cfg.workers = parse_int<unsigned>(key, value);
    else if (key == "out") cfg.out = std::string(trim(value));
    else throw ConfigError(key, "unknown key");
}

void ExperimentConfig::validate() const {
    if (!(delta1_mhz > 0.0)) throw ConfigError("delta1_mhz", "must be positive");
    if (!(omega1_mhz > 0.0)) throw ConfigError("omega1_mhz", "must be positive");
    if (!(t_ramp_us > 0.0)) throw ConfigError("t_ramp_us", "must be positive");
    if (theta_points < 3) throw ConfigError("theta_points", "must be >= 3");
    if (n_steps < 0) throw ConfigError("n_steps", "must be >= 0 (0 = auto)");
    if (dissipation) {
        if (!(t1_us > 0.0)) throw ConfigError("t1_us", "must be positive");
        if (!(t2_star_us > 0.0)) throw ConfigError("t2_star_us", "must be positive");
        if (t2_star_us > 2.0 * t1_us) throw ConfigError("t2_star_us", "must not exceed 2 * t1_us");
    }
    if (!(fidelity > 0.5 && fidelity <= 1.0)) throw ConfigError("fidelity", "must lie in (0.5, 1]");
    if (shots && *shots < 1) throw ConfigError("shots", "must be >= 1 or 'exact'");
    if (sweep_values && sweep_values->empty()) throw ConfigError("sweep_values", "empty list");
    if (t_ramp_list_us) {
        if (t_ramp_list_us->empty()) throw ConfigError("t_ramp_list_us", "empty list");
        for (double t : *t_ramp_list_us) {
            if (!(t > 0.0)) throw ConfigError("t_ramp_list_us", "values must be positive");
        }
    }
    if (lattice_points < 2) throw ConfigError("lattice_points", "must be >= 2");
    if (!(consistency_t_start_us > 0.0)) throw ConfigError("consistency_t_start_us", "must be positive");
    if (consistency_count < 1) throw ConfigError("consistency_count", "must be >= 1");
    if (workers < 1) throw ConfigError("workers", "must be >= 1");
}

CurvatureExperiment ExperimentConfig::to_experiment() const {
    validate();
    CurvatureExperiment e;
    e.manifold.delta1 = units::mhz_to_angular(delta1_mhz);
    e.manifold.omega1 = units::mhz_to_angular(omega1_mhz);
    e.manifold.delta2 = units::mhz_to_angular(delta2_mhz);
    e.manifold.phi = 0.0;
    e.t_ramp = units::us_to_s(t_ramp_us);
    e.theta_points = theta_points;
    e.n_steps = n_steps;
    if (dissipation) e.decoherence = DecoherenceParams{units::us_to_s(t1_us), units::us_to_s(t2_star_us)};
    e.prep.ground_fidelity = fidelity;
    e.n_shots = shots;
    e.seed = seed;
    return e;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::resolved() const {
    std::vector<std::pair<std::string, std::string>> kv{
        {"delta1_mhz", fmt_num(delta1_mhz)},
        {"omega1_mhz", fmt_num(omega1_mhz)},
        {"delta2_mhz", fmt_num(delta2_mhz)},
        {"t_ramp_us", fmt_num(t_ramp_us)},
        {"theta_points", std::to_string(theta_points)},
        {"n_steps", n_steps == 0 ? std::string("auto") : std::to_string(n_steps)},
        {"dissipation", dissipation ? "on" : "off"},
        {"t1_us", fmt_num(t1_us)},
        {"t2_star_us", fmt_num(t2_star_us)},
        {"fidelity", fmt_num(fidelity)},
        {"shots", shots ? std::to_string(*shots) : std::string("exact")},
        {"seed", std::to_string(seed)},
        {"sweep_axis", sweep_axis ? to_string(*sweep_axis) : std::string("default")},
        {"sweep_values", sweep_values ? fmt_list(*sweep_values) : std::string("default")},
        {"t_ramp_list_us", t_ramp_list_us ? fmt_list(*t_ramp_list_us) : std::string("default")},
        {"lattice_points", std::to_string(lattice_points)},
        {"consistency_t_start_us", fmt_num(consistency_t_start_us)},
        {"consistency_count", std::to_string(consistency_count)},
    };
    // workers and out do not affect results and are left out so outputs stay byte-identical.
    return kv;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view l = trim(line);
        if (const auto hash = l.find('#'); hash != std::string_view::npos) l = trim(l.substr(0, hash));
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}", lineno), fmt::format("expected key = value, got '{}'", l));
        }
        apply_setting(base, l.substr(0, eq), l.substr(eq + 1));
    }
    return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config", fmt::format("cannot open '{}'", path));
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

}  // namespace qchern
