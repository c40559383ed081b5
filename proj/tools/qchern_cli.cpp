// qchern - reproduce ramp-tomography Berry curvature and Chern number measurements
//
//   qchern chern --config lab.cfg --out chern.csv
//   qchern transition --set t_ramp_list_us=0.5,1,2 --workers 4 --out transition.csv
//
// Exit codes: 0 success, 1 computation failed a precondition, 2 usage or config error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qchern/lindblad.hpp"
#include "qchern/oracle.hpp"
#include "qchern/report.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string shots;
    bool no_dissipation{false};
    std::optional<unsigned> workers;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config_path, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output CSV path (default: stdout)");
    sub->add_option("--seed", f.seed, "base RNG seed");
    sub->add_option("--shots", f.shots, "shots per tomography axis, or 'exact'");
    sub->add_flag("--no-dissipation", f.no_dissipation, "closed-system evolution");
    sub->add_option("--workers", f.workers, "parallel sweep workers");
    sub->add_option("--set", f.overrides, "override a config key (key=value), repeatable");
}

qchern::ExperimentConfig resolve(const CommonFlags& f) {
    qchern::ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = qchern::load_config(f.config_path);
    for (const auto& kv : f.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw qchern::ConfigError("--set", "expected key=value, got '" + kv + "'");
        qchern::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!f.out.empty()) cfg.out = f.out;
    if (f.seed) cfg.seed = *f.seed;
    if (!f.shots.empty()) qchern::apply_setting(cfg, "shots", f.shots);
    if (f.no_dissipation) cfg.dissipation = false;
    if (f.workers) cfg.workers = *f.workers;
    cfg.validate();
    return cfg;
}

/// Opens cfg.out (or stdout) and runs `body` on it.
template <class Body>
void with_output(const std::string& path, Body&& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw qchern::ConfigError("out", "cannot open '" + path + "' for writing");
    body(os);
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berry curvature and Chern number from the nonadiabatic response of a driven qubit"};
    app.set_version_flag("--version", std::string("qchern ") + qchern::kVersion);
    app.require_subcommand(1);

    CommonFlags flags;
    auto* tomo = app.add_subcommand("tomography", "Bloch vector at each t_meas along one ramp");
    auto* chern = app.add_subcommand("chern", "curvature profile and integrated Chern number");
    auto* transition = app.add_subcommand("transition", "C1 versus delta2/delta1 for each t_ramp");
    auto* ramprate = app.add_subcommand("ramp-rate", "curvature map and C1 versus t_ramp");
    auto* oracle = app.add_subcommand("oracle", "closed-form curvature, lattice Chern number, adiabatic check");
    for (auto* sub : {tomo, chern, transition, ramprate, oracle}) add_common(sub, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const qchern::ExperimentConfig cfg = resolve(flags);
        if (tomo->parsed()) {
            with_output(cfg.out, [&](std::ostream& os) { qchern::cmd_tomography(cfg, os); });
        } else if (chern->parsed()) {
            qchern::ChernResult r;
            with_output(cfg.out, [&](std::ostream& os) { r = qchern::cmd_chern(cfg, os); });
            std::cerr << "c1_raw = " << r.c1_raw << " +- " << r.c1_err << ", c1_corrected = " << r.c1_corrected
                      << '\n';
        } else if (transition->parsed()) {
            with_output(cfg.out, [&](std::ostream& os) { qchern::cmd_transition(cfg, os); });
        } else if (ramprate->parsed()) {
            if (cfg.out.empty() || cfg.out == "-") {
                qchern::cmd_ramprate(cfg, std::cout, std::cout);
            } else {
                std::ofstream map(cfg.out + ".map.csv", std::ios::binary);
                if (!map) throw qchern::ConfigError("out", "cannot open '" + cfg.out + ".map.csv' for writing");
                with_output(cfg.out, [&](std::ostream& os) { qchern::cmd_ramprate(cfg, os, map); });
            }
        } else if (oracle->parsed()) {
            with_output(cfg.out, [&](std::ostream& os) { qchern::cmd_oracle(cfg, os); });
        }
    } catch (const qchern::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const qchern::DegeneracyError& e) {
        std::cerr << "degeneracy on the manifold: " << e.what() << '\n';
        return 1;
    } catch (const qchern::StepSizeError& e) {
        std::cerr << e.what() << " (suggested n_steps = " << e.suggested_steps() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
