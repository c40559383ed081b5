#include "qchern/chern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "qchern/parallel.hpp"

namespace qchern {

void CurvatureExperiment::validate() const {
    manifold.validate();
    if (!(t_ramp > 0.0) || !std::isfinite(t_ramp)) {
        throw std::invalid_argument(fmt::format("experiment: t_ramp must be positive (got {})", t_ramp));
    }
    if (theta_points < 3) {
        throw std::invalid_argument(fmt::format("experiment: theta_points must be >= 3 (got {})", theta_points));
    }
    if (n_steps < 0) {
        throw std::invalid_argument("experiment: n_steps must be >= 0");
    }
    if (decoherence) decoherence->validate();
    prep.validate();
    if (n_shots && *n_shots < 1) {
        throw std::invalid_argument(fmt::format("experiment: n_shots must be >= 1 (got {})", *n_shots));
    }
}

RampProtocol CurvatureExperiment::protocol() const {
    RampProtocol p{t_ramp, 1};
    const long intervals = theta_points - 1;
    if (n_steps > 0) {
        p.n_steps = ((n_steps + intervals - 1) / intervals) * intervals;
    } else {
        p.n_steps = step_control(p, manifold, intervals);
    }
    return p;
}

double curvature_from_response(const ManifoldParams& params, const RampProtocol& protocol, double theta,
                               double sigma_y) {
    const double v = protocol.velocity();
    if (!(v > 0.0)) throw std::invalid_argument("curvature_from_response: ramp velocity must be positive");
    return manifold_point(params, theta).omega * sigma_y / (2.0 * v);
}

double fidelity_correction(double c1_raw, const PreparationModel& prep) {
    prep.validate();
    return c1_raw / prep.contrast();
}

ChernResult chern_integrate(const CurvatureProfile& profile) {
    const auto& s = profile.samples;
    if (s.size() < 3) {
        throw std::invalid_argument(fmt::format("chern_integrate: need >= 3 samples (got {})", s.size()));
    }
    constexpr double kEndTol = 1e-12;
    if (std::abs(s.front().theta) > kEndTol || std::abs(s.back().theta - kPi) > kEndTol) {
        throw std::invalid_argument(fmt::format(
            "chern_integrate: samples span [{}, {}], not [0, pi]; extrapolation refused", s.front().theta,
            s.back().theta));
    }
    double sum = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double left = i > 0 ? s[i].theta - s[i - 1].theta : 0.0;
        const double right = i + 1 < s.size() ? s[i + 1].theta - s[i].theta : 0.0;
        if (i + 1 < s.size() && !(right > 0.0)) {
            throw std::invalid_argument("chern_integrate: theta samples must be strictly increasing");
        }
        const double w = 0.5 * (left + right);
        sum += w * s[i].f_est;
        var += w * w * s[i].f_err * s[i].f_err;
    }
    ChernResult r;
    r.c1_raw = sum;
    r.c1_err = std::sqrt(var);
    r.c1_corrected = fidelity_correction(sum, profile.experiment.prep);
    r.c1_corrected_err = r.c1_err / profile.experiment.prep.contrast();
    return r;
}

namespace {

template <class Traj>
CurvatureProfile readout(const CurvatureExperiment& cfg, const RampProtocol& protocol, const Traj& traj) {
    const long intervals = cfg.theta_points - 1;
    if (static_cast<long>(traj.size()) != cfg.theta_points) {
        throw std::logic_error("run_curvature_experiment: trajectory not aligned with readout grid");
    }
    CurvatureProfile profile;
    profile.experiment = cfg;
    profile.n_steps_used = protocol.n_steps;
    profile.samples.reserve(traj.size());
    for (long j = 0; j < cfg.theta_points; ++j) {
        CurvatureSample smp;
        // Readout grid is exact, independent of accumulated float time.
        smp.t_meas = cfg.t_ramp * static_cast<double>(j) / static_cast<double>(intervals);
        smp.theta = (j == intervals) ? kPi : kPi * static_cast<double>(j) / static_cast<double>(intervals);
        const BlochVector exact = bloch_expectations(traj.states[static_cast<std::size_t>(j)]);
        if (cfg.n_shots) {
            const SampledBloch m = sample_bloch(exact, *cfg.n_shots, derive_seed(cfg.seed, static_cast<std::uint64_t>(j)));
            smp.bloch = {m.x.estimate, m.y.estimate, m.z.estimate};
            smp.bloch_err = {m.x.std_error, m.y.std_error, m.z.std_error};
        } else {
            smp.bloch = exact;
        }
        smp.f_est = curvature_from_response(cfg.manifold, protocol, smp.theta, smp.bloch.y);
        smp.f_err = std::abs(curvature_from_response(cfg.manifold, protocol, smp.theta, smp.bloch_err.y));
        profile.samples.push_back(smp);
    }
    return profile;
}

}  // namespace

CurvatureProfile run_curvature_experiment(const CurvatureExperiment& cfg) {
    cfg.validate();
    const RampProtocol protocol = cfg.protocol();
    IntegrationOptions opts;
    opts.record_stride = protocol.n_steps / (cfg.theta_points - 1);

    if (!cfg.decoherence && cfg.prep.ground_fidelity == 1.0) {
        const PureState psi0 = ground_state(cfg.manifold, 0.0);
        return readout(cfg, protocol, evolve_unitary(cfg.manifold, protocol, psi0, cfg.t_ramp, opts));
    }
    const DensityMatrix rho0 = prepare_initial(cfg.manifold, cfg.prep);
    const DecoherenceParams d = cfg.decoherence.value_or(DecoherenceParams::coherent());
    return readout(cfg, protocol, evolve_lindblad(cfg.manifold, protocol, rho0, d, cfg.t_ramp, opts));
}

double propagated_shot_error(const CurvatureProfile& exact_profile, long n_shots) {
    if (n_shots < 1) throw std::invalid_argument("propagated_shot_error: n_shots must be >= 1");
    CurvatureProfile with_err = exact_profile;
    const RampProtocol protocol{exact_profile.experiment.t_ramp, 1};
    for (auto& s : with_err.samples) {
        // Binomial standard error of 2 p - 1 with p = (1 + <sy>) / 2.
        const double sy = std::clamp(s.bloch.y, -1.0, 1.0);
        const double sy_err = std::sqrt((1.0 - sy * sy) / static_cast<double>(n_shots));
        s.f_err = std::abs(curvature_from_response(exact_profile.experiment.manifold, protocol, s.theta, sy_err));
    }
    return chern_integrate(with_err).c1_err;
}

long shots_for_target_error(const CurvatureProfile& exact_profile, double target) {
    if (!(target > 0.0)) throw std::invalid_argument("shots_for_target_error: target must be positive");
    const double unit = propagated_shot_error(exact_profile, 1);
    long n = std::max(1L, static_cast<long>(std::ceil(unit * unit / (target * target))));
    while (propagated_shot_error(exact_profile, n) > target) ++n;
    return n;
}

long fringe_resolving_theta_points(const ManifoldParams& params, double t_ramp, double samples_per_period) {
    if (!(t_ramp > 0.0) || !(samples_per_period > 0.0))
        throw std::invalid_argument("t_ramp and samples_per_period must be positive");
    const double periods = max_field_norm(params) * t_ramp / kTwoPi;
    return 1 + static_cast<long>(std::ceil(samples_per_period * periods));
}

std::vector<TransitionPoint> transition_sweep(const std::vector<double>& delta2_ratios,
                                              const CurvatureExperiment& base, unsigned workers) {
    return parallel_map(delta2_ratios.size(), workers, [&](std::size_t i) {
        CurvatureExperiment cfg = base;
        cfg.manifold.delta2 = delta2_ratios[i] * base.manifold.delta1;
        cfg.seed = derive_seed(base.seed, i);
        return TransitionPoint{delta2_ratios[i], chern_integrate(run_curvature_experiment(cfg))};
    });
}

std::vector<RampRatePoint> ramp_rate_sweep(const std::vector<double>& t_ramps, const CurvatureExperiment& base,
                                           unsigned workers) {
    return parallel_map(t_ramps.size(), workers, [&](std::size_t i) {
        CurvatureExperiment cfg = base;
        cfg.t_ramp = t_ramps[i];
        cfg.seed = derive_seed(base.seed, i);
        RampRatePoint pt;
        pt.t_ramp = t_ramps[i];
        pt.profile = run_curvature_experiment(cfg);
        pt.chern = chern_integrate(pt.profile);
        return pt;
    });
}

std::vector<double> coarse_transition_grid() {
    std::vector<double> grid;
    for (int k = 0; k < 29; ++k) grid.push_back(-1.0 / 3.0 + (7.0 / 3.0) * k / 28.0);
    return grid;
}

std::vector<double> fine_transition_grid() {
    std::vector<double> grid;
    for (int k = 0; k < 15; ++k) grid.push_back(0.8 + 0.4 * k / 14.0);
    return grid;
}

std::vector<double> default_transition_grid() {
    std::vector<double> grid = coarse_transition_grid();
    const std::vector<double> fine = fine_transition_grid();
    grid.insert(grid.end(), fine.begin(), fine.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());
    return grid;
}

std::vector<double> default_ramp_rate_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 30; ++k) grid.push_back(0.1e-6 * k);
    return grid;
}

std::optional<double> transition_width(const std::vector<TransitionPoint>& sweep, double upper, double lower) {
    std::vector<TransitionPoint> pts = sweep;
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.delta2_over_delta1 < b.delta2_over_delta1; });

    auto crossing = [&](double level, std::size_t from) -> std::optional<std::pair<double, std::size_t>> {
        for (std::size_t i = from; i + 1 < pts.size(); ++i) {
            const double c0 = pts[i].chern.c1_raw, c1 = pts[i + 1].chern.c1_raw;
            if (c0 >= level && c1 < level) {
                const double x0 = pts[i].delta2_over_delta1, x1 = pts[i + 1].delta2_over_delta1;
                return std::pair{x0 + (c0 - level) / (c0 - c1) * (x1 - x0), i};
            }
        }
        return std::nullopt;
    };

    const auto hi = crossing(upper, 0);
    if (!hi) return std::nullopt;
    const auto lo = crossing(lower, hi->second);
    if (!lo) return std::nullopt;
    return lo->first - hi->first;
}

PlateauAverages plateau_averages(const std::vector<TransitionPoint>& sweep) {
    PlateauAverages avg;
    for (const auto& p : sweep) {
        if (p.delta2_over_delta1 < 1.0 - 1e-12) {
            avg.below += p.chern.c1_raw;
            ++avg.n_below;
        } else if (p.delta2_over_delta1 > 1.0 + 1e-12) {
            avg.above += p.chern.c1_raw;
            ++avg.n_above;
        }
    }
    if (avg.n_below) avg.below /= static_cast<double>(avg.n_below);
    if (avg.n_above) avg.above /= static_cast<double>(avg.n_above);
    return avg;
}

}  // namespace qchern
