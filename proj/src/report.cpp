#include "qchern/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qchern/oracle.hpp"
#include "qchern/units.hpp"

namespace qchern {

namespace {

std::string num(double x) {
    if (x == 0.0) x = 0.0;  // no "-0" in output
    return fmt::format("{:.10g}", x);
}

std::vector<double> sweep_values_or(const ExperimentConfig& cfg, SweepAxis expected, std::vector<double> fallback) {
    if (cfg.sweep_axis && *cfg.sweep_axis != expected) {
        throw ConfigError("sweep_axis", fmt::format("this command sweeps {}, got {}", to_string(expected),
                                                    to_string(*cfg.sweep_axis)));
    }
    return cfg.sweep_values ? *cfg.sweep_values : std::move(fallback);
}

}  // namespace

void write_header(std::ostream& os, const std::string& command, const ExperimentConfig& cfg) {
    fmt::print(os, "# qchern {}\n# command = {}\n", kVersion, command);
    for (const auto& [k, v] : cfg.resolved()) fmt::print(os, "# {} = {}\n", k, v);
}

void cmd_tomography(const ExperimentConfig& cfg, std::ostream& os) {
    const CurvatureProfile profile = run_curvature_experiment(cfg.to_experiment());
    write_header(os, "tomography", cfg);
    fmt::print(os, "# n_steps_used = {}\n", profile.n_steps_used);
    const bool sampled = cfg.shots.has_value();
    fmt::print(os, sampled ? "t_meas_us,theta,sx,sy,sz,sx_err,sy_err,sz_err\n" : "t_meas_us,theta,sx,sy,sz\n");
    for (const auto& s : profile.samples) {
        fmt::print(os, "{},{},{},{},{}", num(units::s_to_us(s.t_meas)), num(s.theta), num(s.bloch.x), num(s.bloch.y),
                   num(s.bloch.z));
        if (sampled) fmt::print(os, ",{},{},{}", num(s.bloch_err.x), num(s.bloch_err.y), num(s.bloch_err.z));
        os << '\n';
    }
}

ChernResult cmd_chern(const ExperimentConfig& cfg, std::ostream& os) {
    const CurvatureProfile profile = run_curvature_experiment(cfg.to_experiment());
    const ChernResult r = chern_integrate(profile);
    write_header(os, "chern", cfg);
    fmt::print(os, "# n_steps_used = {}\n", profile.n_steps_used);
    fmt::print(os, "theta,t_meas_us,sy,f_est,f_err\n");
    for (const auto& s : profile.samples) {
        fmt::print(os, "{},{},{},{},{}\n", num(s.theta), num(units::s_to_us(s.t_meas)), num(s.bloch.y), num(s.f_est),
                   num(s.f_err));
    }
    fmt::print(os, "# summary: c1_raw = {}, c1_err = {}, c1_corrected = {}, c1_corrected_err = {}, quadrature = {}\n",
               num(r.c1_raw), num(r.c1_err), num(r.c1_corrected), num(r.c1_corrected_err), r.quadrature);
    return r;
}

void cmd_transition(const ExperimentConfig& cfg, std::ostream& os) {
    const std::vector<double> ratios = sweep_values_or(cfg, SweepAxis::delta2, default_transition_grid());
    const std::vector<double> t_list = cfg.t_ramp_list_us.value_or(std::vector<double>{cfg.t_ramp_us});
    const CurvatureExperiment base = cfg.to_experiment();

    write_header(os, "transition", cfg);
    fmt::print(os, "t_ramp_us,delta2_over_delta1,c1_raw,c1_err,c1_corrected\n");
    std::string trailer;
    for (std::size_t k = 0; k < t_list.size(); ++k) {
        CurvatureExperiment e = base;
        e.t_ramp = units::us_to_s(t_list[k]);
        e.seed = derive_seed(base.seed, 0x7472616e00000000ULL + k);
        const auto sweep = transition_sweep(ratios, e, cfg.workers);
        for (const auto& p : sweep) {
            fmt::print(os, "{},{},{},{},{}\n", num(t_list[k]), num(p.delta2_over_delta1), num(p.chern.c1_raw),
                       num(p.chern.c1_err), num(p.chern.c1_corrected));
        }
        const auto width = transition_width(sweep);
        const auto plateau = plateau_averages(sweep);
        trailer += fmt::format("# width: t_ramp_us = {}, width_75_25 = {}\n", num(t_list[k]),
                               width ? num(*width) : std::string("undetermined"));
        trailer += fmt::format("# plateau: t_ramp_us = {}, below = {}, n_below = {}, above = {}, n_above = {}\n",
                               num(t_list[k]), num(plateau.below), plateau.n_below, num(plateau.above),
                               plateau.n_above);
    }
    os << trailer;
}

void cmd_ramprate(const ExperimentConfig& cfg, std::ostream& table, std::ostream& map) {
    std::vector<double> t_us;
    for (double t : default_ramp_rate_grid()) t_us.push_back(units::s_to_us(t));
    t_us = sweep_values_or(cfg, SweepAxis::t_ramp, t_us);
    std::vector<double> t_s;
    for (double t : t_us) {
        if (!(t > 0.0)) throw ConfigError("sweep_values", "t_ramp values must be positive");
        t_s.push_back(units::us_to_s(t));
    }
    const CurvatureExperiment base = cfg.to_experiment();
    const auto sweep = ramp_rate_sweep(t_s, base, cfg.workers);

    write_header(table, "ramp-rate", cfg);
    fmt::print(table, "t_ramp_us,c1_raw,c1_err,c1_corrected\n");
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        fmt::print(table, "{},{},{},{}\n", num(t_us[i]), num(sweep[i].chern.c1_raw), num(sweep[i].chern.c1_err),
                   num(sweep[i].chern.c1_corrected));
    }

    write_header(map, "ramp-rate-map", cfg);
    fmt::print(map, "t_ramp_us,theta,f_est,f_err,f_analytic\n");
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        for (const auto& s : sweep[i].profile.samples) {
            std::string analytic = "nan";
            try {
                analytic = num(analytic_curvature(base.manifold, s.theta));
            } catch (const DegeneracyError&) {
            }
            fmt::print(map, "{},{},{},{},{}\n", num(t_us[i]), num(s.theta), num(s.f_est), num(s.f_err), analytic);
        }
    }
}

void cmd_oracle(const ExperimentConfig& cfg, std::ostream& os) {
    const CurvatureExperiment e = cfg.to_experiment();
    const ManifoldParams& m = e.manifold;

    std::vector<std::pair<double, double>> rows;
    for (long j = 0; j < cfg.theta_points; ++j) {
        const double theta = (j + 1 == cfg.theta_points) ? kPi : kPi * j / static_cast<double>(cfg.theta_points - 1);
        rows.emplace_back(theta, analytic_curvature(m, theta));  // throws on a degeneracy on the manifold
    }
    const double integral = analytic_chern_integral(m);
    const LatticeChern lattice = lattice_chern(m, {cfg.lattice_points, cfg.lattice_points});
    const ConsistencyReport report =
        adiabatic_consistency(m, units::us_to_s(cfg.consistency_t_start_us), cfg.consistency_count);

    write_header(os, "oracle", cfg);
    fmt::print(os, "theta,curvature\n");
    for (const auto& [theta, f] : rows) fmt::print(os, "{},{}\n", num(theta), num(f));
    fmt::print(os, "# analytic_integral = {}\n", num(integral));
    fmt::print(os, "# lattice_chern = {}, raw_sum = {}, max_plaquette_phase = {}\n", lattice.chern,
               num(lattice.raw_sum), num(lattice.max_plaquette_phase));
    fmt::print(os, "# consistency: transient_floor = {}, decay_exponent = {}, monotone = {}\n",
               num(report.transient_floor), num(report.decay_exponent), report.monotone ? "yes" : "no");
    for (const auto& r : report.rows) {
        fmt::print(os, "# consistency_row: t_ramp_us = {}, max_deviation = {}, mean_deviation = {}, c1 = {}\n",
                   num(units::s_to_us(r.t_ramp)), num(r.max_deviation), num(r.mean_deviation), num(r.c1));
    }
}

}  // namespace qchern
