#include "qchern/qubit_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace qchern {

void ManifoldParams::validate() const {
    if (!(delta1 > 0.0) || !(omega1 > 0.0)) {
        throw std::invalid_argument(
            fmt::format("manifold: delta1 and omega1 must be positive (got {}, {})", delta1, omega1));
    }
    if (!std::isfinite(delta2)) {
        throw std::invalid_argument("manifold: delta2 must be finite");
    }
    if (!(phi >= 0.0 && phi < kTwoPi)) {
        throw std::invalid_argument(fmt::format("manifold: phi must lie in [0, 2pi) (got {})", phi));
    }
}

ManifoldParams ManifoldParams::with_phi(double new_phi) const {
    ManifoldParams out = *this;
    double wrapped = std::fmod(new_phi, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    if (wrapped >= kTwoPi) wrapped = 0.0;
    out.phi = wrapped;
    return out;
}

void RampProtocol::validate() const {
    if (!(t_ramp > 0.0) || !std::isfinite(t_ramp)) {
        throw std::invalid_argument(fmt::format("protocol: t_ramp must be positive (got {})", t_ramp));
    }
    if (n_steps <= 0) {
        throw std::invalid_argument(fmt::format("protocol: n_steps must be positive (got {})", n_steps));
    }
}

double Hamiltonian2::norm() const { return std::sqrt(hx * hx + hy * hy + hz * hz); }

std::array<std::array<cplx, 2>, 2> Hamiltonian2::matrix() const {
    return {{{cplx{0.5 * hz, 0.0}, cplx{0.5 * hx, -0.5 * hy}},
             {cplx{0.5 * hx, 0.5 * hy}, cplx{-0.5 * hz, 0.0}}}};
}

std::array<double, 2> Hamiltonian2::eigenvalues() const {
    const double e = 0.5 * norm();
    return {-e, e};
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double PureState::norm_squared() const { return std::norm(amp[0]) + std::norm(amp[1]); }

BlochVector PureState::bloch() const {
    // rho_01 = a b*; <sx> = 2 Re rho_01, <sy> = -2 Im rho_01
    const cplx rho01 = amp[0] * std::conj(amp[1]);
    return {2.0 * rho01.real(), -2.0 * rho01.imag(), std::norm(amp[0]) - std::norm(amp[1])};
}

cplx PureState::overlap(const PureState& other) const {
    return std::conj(amp[0]) * other.amp[0] + std::conj(amp[1]) * other.amp[1];
}

double PureState::fidelity(const PureState& other) const { return std::norm(overlap(other)); }

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return {psi.norm_squared(), psi.bloch()};
}

std::array<std::array<cplx, 2>, 2> DensityMatrix::matrix() const {
    return {{{cplx{0.5 * (trace + r.z), 0.0}, cplx{0.5 * r.x, -0.5 * r.y}},
             {cplx{0.5 * r.x, 0.5 * r.y}, cplx{0.5 * (trace - r.z), 0.0}}}};
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
    const double n = r.norm();
    return {0.5 * (trace - n), 0.5 * (trace + n)};
}

ManifoldPoint manifold_point(const ManifoldParams& params, double theta) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::out_of_range(fmt::format("theta {} outside [0, pi]", theta));
    }
    // sin(pi) is not exactly zero in floating point; the poles are pinned.
    const double s = (theta == kPi) ? 0.0 : std::sin(theta);
    const double c = (theta == kPi) ? -1.0 : std::cos(theta);
    return {params.delta1 * c + params.delta2, params.omega1 * s};
}

Hamiltonian2 hamiltonian_at(const ManifoldParams& params, double theta) {
    const auto [delta, omega] = manifold_point(params, theta);
    return {omega * std::cos(params.phi), omega * std::sin(params.phi), delta};
}

double max_field_norm(const ManifoldParams& params) {
    // |h|^2 is a quadratic in c = cos(theta) on [-1, 1].
    const double d1 = params.delta1, o1 = params.omega1, d2 = params.delta2;
    auto norm2 = [&](double c) { return o1 * o1 * (1.0 - c * c) + (d1 * c + d2) * (d1 * c + d2); };
    double best = std::max(norm2(-1.0), norm2(1.0));
    const double curv = d1 * d1 - o1 * o1;
    if (curv < 0.0) {
        const double c_star = -d1 * d2 / curv;
        if (c_star > -1.0 && c_star < 1.0) best = std::max(best, norm2(c_star));
    }
    return std::sqrt(best);
}

PureState ground_state(const Hamiltonian2& h, double abs_tol) {
    const double n = h.norm();
    if (!(n > abs_tol)) {
        throw DegeneracyError(fmt::format("ground state undefined: |h| = {} below tolerance {}", n, abs_tol));
    }
    // Ground state Bloch vector is -h/|h|: amplitudes (sin(a/2), -e^{ib} cos(a/2))
    // for h at polar angle a and azimuth b. Branch on hemisphere for stability.
    const double nz = h.hz / n;
    const cplx perp{h.hx / n, h.hy / n};
    PureState psi;
    if (nz <= 0.0) {
        const double s = std::sqrt(0.5 * (1.0 - nz));
        psi.amp = {cplx{s, 0.0}, -perp / (2.0 * s)};
    } else {
        const double c = std::sqrt(0.5 * (1.0 + nz));
        const double perp_abs = std::abs(perp);
        const cplx phase = perp_abs > 0.0 ? perp / perp_abs : cplx{1.0, 0.0};
        psi.amp = {cplx{perp_abs / (2.0 * c), 0.0}, -phase * c};
    }
    return psi;
}

PureState ground_state(const ManifoldParams& params, double theta) {
    return ground_state(hamiltonian_at(params, theta),
                        kDegeneracyRelTol * std::max(params.delta1, params.omega1));
}

}  // namespace qchern
