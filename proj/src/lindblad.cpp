#include "qchern/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace qchern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Spinor = std::array<cplx, 2>;
using Bloch4 = std::array<double, 4>;  // trace, rx, ry, rz

Spinor schrodinger_rhs(const Hamiltonian2& h, const Spinor& psi) {
    // -i (H/hbar) psi
    const cplx h00{0.5 * h.hz, 0.0};
    const cplx h01{0.5 * h.hx, -0.5 * h.hy};
    const cplx h10{0.5 * h.hx, 0.5 * h.hy};
    const cplx mi{0.0, -1.0};
    return {mi * (h00 * psi[0] + h01 * psi[1]), mi * (h10 * psi[0] - h00 * psi[1])};
}

Bloch4 lindblad_rhs(const Hamiltonian2& h, const JumpRates& g, const Bloch4& s) {
    const double x = s[1], y = s[2], z = s[3];
    const double g2 = g.gamma2();
    return {0.0,
            h.hy * z - h.hz * y - g2 * x,
            h.hz * x - h.hx * z - g2 * y,
            h.hx * y - h.hy * x - g.gamma1 * (z + s[0])};
}

template <class V, class F>
V rk4_step(const F& rhs, const HamiltonianSchedule& sched, double t, double dt, const V& y) {
    auto axpy = [](const V& a, double c, const V& b) {
        V out;
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
        return out;
    };
    const Hamiltonian2 h0 = sched(t);
    const Hamiltonian2 hm = sched(t + 0.5 * dt);
    const Hamiltonian2 h1 = sched(t + dt);
    const V k1 = rhs(h0, y);
    const V k2 = rhs(hm, axpy(y, 0.5 * dt, k1));
    const V k3 = rhs(hm, axpy(y, 0.5 * dt, k2));
    const V k4 = rhs(h1, axpy(y, dt, k3));
    V out;
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

void check_grid(double t_end, long n_steps) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw std::invalid_argument(fmt::format("evolve: t_end must be positive (got {})", t_end));
    }
    if (n_steps <= 0) {
        throw std::invalid_argument(fmt::format("evolve: n_steps must be positive (got {})", n_steps));
    }
}

bool should_record(long k, long n_steps, long stride) {
    return k == n_steps || (stride > 0 && k % stride == 0);
}

long ramp_steps_to(const RampProtocol& protocol, double t_end) {
    protocol.validate();
    if (!(t_end > 0.0) || t_end > protocol.t_ramp * (1.0 + 1e-12)) {
        throw std::out_of_range(fmt::format("evolve: t_end {} outside (0, t_ramp = {}]", t_end, protocol.t_ramp));
    }
    const double exact = static_cast<double>(protocol.n_steps) * t_end / protocol.t_ramp;
    // Snap near-integers so aligned t_meas points land on grid points.
    const double rounded = std::round(exact);
    const double n = std::abs(exact - rounded) < 1e-9 * std::max(1.0, exact) ? rounded : std::ceil(exact);
    return std::max(1L, static_cast<long>(n));
}

}  // namespace

void DecoherenceParams::validate() const {
    if (!(t1 > 0.0) || !(t2_star > 0.0)) {
        throw std::invalid_argument(fmt::format("decoherence: t1 and t2_star must be positive (got {}, {})", t1, t2_star));
    }
    if (t2_star > 2.0 * t1) {
        throw std::invalid_argument(
            fmt::format("decoherence: t2_star = {} exceeds 2 t1 = {}; pure dephasing rate would be negative",
                        t2_star, 2.0 * t1));
    }
}

DecoherenceParams DecoherenceParams::coherent() { return {kInf, kInf}; }

JumpRates jump_rates(const DecoherenceParams& d) {
    d.validate();
    JumpRates g;
    g.gamma1 = std::isinf(d.t1) ? 0.0 : 1.0 / d.t1;
    const double gamma2 = std::isinf(d.t2_star) ? 0.0 : 1.0 / d.t2_star;
    g.gamma_phi = gamma2 - 0.5 * g.gamma1;
    if (g.gamma_phi < 0.0) {
        // Only reachable through rounding at t2_star == 2 t1.
        if (g.gamma_phi > -1e-12 * gamma2) {
            g.gamma_phi = 0.0;
        } else {
            throw std::invalid_argument("decoherence: negative pure dephasing rate");
        }
    }
    return g;
}

HamiltonianSchedule ramp_schedule(const ManifoldParams& params, const RampProtocol& protocol) {
    return [params, protocol](double t) {
        const double theta = std::clamp(protocol.theta_at(t), 0.0, kPi);
        return hamiltonian_at(params, theta);
    };
}

PureTrajectory evolve_unitary(const HamiltonianSchedule& h, const PureState& psi0, double t_end,
                              long n_steps, const IntegrationOptions& opts) {
    check_grid(t_end, n_steps);
    const double dt = t_end / static_cast<double>(n_steps);
    PureTrajectory traj;
    Spinor psi = psi0.amp;
    traj.times.push_back(0.0);
    traj.states.push_back(psi0);
    for (long k = 1; k <= n_steps; ++k) {
        const double t = static_cast<double>(k - 1) * dt;
        psi = rk4_step(schrodinger_rhs, h, t, dt, psi);
        const double drift = std::abs(std::norm(psi[0]) + std::norm(psi[1]) - psi0.norm_squared());
        if (drift > opts.norm_abort_tol) {
            throw StepSizeError(
                fmt::format("evolve_unitary: norm drift {:.3e} after {} of {} steps; refine the time grid",
                            drift, k, n_steps),
                4 * n_steps);
        }
        if (should_record(k, n_steps, opts.record_stride)) {
            traj.times.push_back(k == n_steps ? t_end : static_cast<double>(k) * dt);
            traj.states.push_back(PureState{psi});
        }
    }
    return traj;
}

MixedTrajectory evolve_lindblad(const HamiltonianSchedule& h, const DensityMatrix& rho0,
                                const JumpRates& rates, double t_end, long n_steps,
                                const IntegrationOptions& opts) {
    check_grid(t_end, n_steps);
    if (rho0.min_eigenvalue() < -opts.positivity_tol) {
        throw std::invalid_argument("evolve_lindblad: initial state is not positive semidefinite");
    }
    const double dt = t_end / static_cast<double>(n_steps);
    auto rhs = [&rates](const Hamiltonian2& hh, const Bloch4& s) { return lindblad_rhs(hh, rates, s); };
    MixedTrajectory traj;
    Bloch4 s{rho0.trace, rho0.r.x, rho0.r.y, rho0.r.z};
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    for (long k = 1; k <= n_steps; ++k) {
        const double t = static_cast<double>(k - 1) * dt;
        s = rk4_step(rhs, h, t, dt, s);
        const DensityMatrix rho{s[0], {s[1], s[2], s[3]}};
        if (rho.min_eigenvalue() < -opts.positivity_tol) {
            throw PositivityError(fmt::format(
                "evolve_lindblad: eigenvalue {:.3e} after {} of {} steps; integrator misconfigured",
                rho.min_eigenvalue(), k, n_steps));
        }
        if (should_record(k, n_steps, opts.record_stride)) {
            traj.times.push_back(k == n_steps ? t_end : static_cast<double>(k) * dt);
            traj.states.push_back(rho);
        }
    }
    return traj;
}

PureTrajectory evolve_unitary(const ManifoldParams& params, const RampProtocol& protocol,
                              const PureState& psi0, double t_end, const IntegrationOptions& opts) {
    params.validate();
    if (std::abs(psi0.norm_squared() - 1.0) > 1e-9) {
        throw std::invalid_argument("evolve_unitary: initial state is not normalized");
    }
    const long n = ramp_steps_to(protocol, t_end);
    return evolve_unitary(ramp_schedule(params, protocol), psi0, t_end, n, opts);
}

MixedTrajectory evolve_lindblad(const ManifoldParams& params, const RampProtocol& protocol,
                                const DensityMatrix& rho0, const DecoherenceParams& d, double t_end,
                                const IntegrationOptions& opts) {
    params.validate();
    if (std::abs(rho0.trace - 1.0) > 1e-9) {
        throw std::invalid_argument("evolve_lindblad: initial state does not have unit trace");
    }
    const long n = ramp_steps_to(protocol, t_end);
    return evolve_lindblad(ramp_schedule(params, protocol), rho0, jump_rates(d), t_end, n, opts);
}

long step_control(const RampProtocol& protocol, const ManifoldParams& params, long align_to) {
    if (!(protocol.t_ramp > 0.0)) {
        throw std::invalid_argument("step_control: t_ramp must be positive");
    }
    const double total_angle = max_field_norm(params) * protocol.t_ramp;
    const double by_resolution = kMinStepsPerPeriod * total_angle / kTwoPi;
    double by_accuracy = 0.0;
    if (total_angle > 0.0) {
        const double x_max = std::pow(120.0 * kPhaseErrorBudget / total_angle, 0.25);
        by_accuracy = total_angle / x_max;
    }
    long n = static_cast<long>(std::ceil(std::max({by_resolution, by_accuracy, 1.0})));
    if (align_to > 0) n = ((n + align_to - 1) / align_to) * align_to;
    return n;
}

}  // namespace qchern
