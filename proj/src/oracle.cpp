#include "qchern/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "qchern/chern.hpp"

namespace qchern {

double analytic_curvature(const ManifoldParams& params, double theta) {
    const auto [delta, omega] = manifold_point(params, theta);
    const double h2 = omega * omega + delta * delta;
    const double tol = kDegeneracyRelTol * std::max(params.delta1, params.omega1);
    if (!(std::sqrt(h2) > tol)) {
        throw DegeneracyError(fmt::format("analytic_curvature: degeneracy on the manifold at theta = {}", theta));
    }
    const double s = (theta == kPi) ? 0.0 : std::sin(theta);
    const double c = (theta == kPi) ? -1.0 : std::cos(theta);
    const double o1 = params.omega1;
    return o1 * o1 * s * (params.delta1 + params.delta2 * c) / (2.0 * h2 * std::sqrt(h2));
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double analytic_chern_integral(const ManifoldParams& params, double tol) {
    params.validate();
    const std::function<double(double)> f = [&](double th) { return analytic_curvature(params, th); };
    // Split into panels so a sharply peaked integrand near a pole is not missed by the first probes.
    constexpr int kPanels = 16;
    double total = 0.0;
    for (int k = 0; k < kPanels; ++k) {
        const double a = kPi * k / kPanels;
        const double b = (k + 1 == kPanels) ? kPi : kPi * (k + 1) / kPanels;
        const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
        total += adaptive_simpson(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol / kPanels, 50);
    }
    return total;
}

void LatticeGrid::validate() const {
    if (n_theta < 2 || n_phi < 2) {
        throw std::invalid_argument(fmt::format("lattice: need at least 2x2 plaquettes (got {}x{})", n_theta, n_phi));
    }
}

LatticeChern lattice_chern(const ManifoldParams& params, const LatticeGrid& grid, const GaugeTwist& twist,
                           double phase_guard) {
    params.validate();
    grid.validate();
    const auto nt = static_cast<std::size_t>(grid.n_theta);
    const auto np = static_cast<std::size_t>(grid.n_phi);

    std::vector<PureState> sites((nt + 1) * np);
    auto at = [&](std::size_t i, std::size_t j) -> PureState& { return sites[i * np + (j % np)]; };
    for (std::size_t i = 0; i <= nt; ++i) {
        const double theta = (i == nt) ? kPi : kPi * static_cast<double>(i) / static_cast<double>(nt);
        for (std::size_t j = 0; j < np; ++j) {
            const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(np);
            PureState psi = ground_state(params.with_phi(phi), theta);
            if (twist) {
                const cplx g = std::polar(1.0, twist(theta, phi));
                psi.amp[0] *= g;
                psi.amp[1] *= g;
            }
            at(i, j) = psi;
        }
    }

    auto link = [](const PureState& a, const PureState& b) {
        const cplx u = a.overlap(b);
        const double m = std::abs(u);
        if (!(m > 0.0)) throw LatticeResolutionError("lattice_chern: orthogonal neighbouring states; refine the grid");
        return u / m;
    };

    LatticeChern out;
    double sum = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            const PureState& a = at(i, j);
            const PureState& b = at(i + 1, j);
            const PureState& c = at(i + 1, j + 1);
            const PureState& d = at(i, j + 1);
            // Link phases carry -A dx, so the loop (theta, then phi) is negated.
            const double phase = -std::arg(link(a, b) * link(b, c) * link(c, d) * link(d, a));
            out.max_plaquette_phase = std::max(out.max_plaquette_phase, std::abs(phase));
            if (std::abs(phase) > kPi - phase_guard) {
                throw LatticeResolutionError(
                    fmt::format("lattice_chern: plaquette ({}, {}) phase {:.4f} too close to pi; refine the grid", i,
                                j, phase));
            }
            sum += phase;
        }
    }
    out.raw_sum = sum / kTwoPi;
    out.chern = static_cast<int>(std::lround(out.raw_sum));
    return out;
}

ConsistencyReport adiabatic_consistency(const ManifoldParams& params, double t_start, int count) {
    params.validate();
    if (!(t_start > 0.0) || count < 1) {
        throw std::invalid_argument("adiabatic_consistency: need t_start > 0 and count >= 1");
    }
    ConsistencyReport report;
    const double head = params.delta1 + params.delta2;
    report.transient_floor = params.omega1 * params.omega1 / (2.0 * head * head);

    for (int k = 0; k < count; ++k) {
        CurvatureExperiment cfg;
        cfg.manifold = params;
        cfg.manifold.phi = 0.0;
        cfg.t_ramp = t_start * std::ldexp(1.0, k);
        cfg.theta_points = std::max(51L, fringe_resolving_theta_points(cfg.manifold, cfg.t_ramp));
        cfg.prep.ground_fidelity = 1.0;
        const CurvatureProfile profile = run_curvature_experiment(cfg);

        ConsistencyRow row;
        row.t_ramp = cfg.t_ramp;
        for (const auto& s : profile.samples) {
            const double dev = std::abs(s.f_est - analytic_curvature(cfg.manifold, s.theta));
            row.max_deviation = std::max(row.max_deviation, dev);
            row.mean_deviation += dev;
        }
        row.mean_deviation /= static_cast<double>(profile.samples.size());
        row.c1 = chern_integrate(profile).c1_raw;
        report.rows.push_back(row);
    }

    report.monotone = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (!(report.rows[i].max_deviation < report.rows[i - 1].max_deviation)) report.monotone = false;
    }
    if (report.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(report.rows.size());
        for (const auto& r : report.rows) {
            const double x = std::log(r.t_ramp), y = std::log(r.max_deviation);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        report.decay_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return report;
}

}  // namespace qchern
