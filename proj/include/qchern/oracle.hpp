// oracle.hpp - Ground-truth Berry curvature and Chern number from exact eigenstates
//
// Used to validate the dynamical extraction in chern.hpp. Nothing here integrates
// the equations of motion except adiabatic_consistency, which compares the two.

#pragma once

#include <functional>
#include <vector>

#include "qchern/qubit_model.hpp"

namespace qchern {

/// Closed-form ground-state curvature on the ellipsoid,
///   F = omega1^2 sin(theta) (delta1 + delta2 cos(theta)) / (2 |h|^3),
/// |h|^2 = omega1^2 sin^2(theta) + (delta1 cos(theta) + delta2)^2.
/// Independent of phi. Throws DegeneracyError where |h| vanishes on the manifold.
double analytic_curvature(const ManifoldParams& params, double theta);

/// int_0^pi analytic_curvature dtheta by adaptive Simpson quadrature.
double analytic_chern_integral(const ManifoldParams& params, double tol = 1e-10);

struct LatticeGrid {
    long n_theta{64};  // plaquettes along theta in [0, pi]
    long n_phi{64};    // plaquettes along phi in [0, 2 pi), periodic

    void validate() const;
};

/// Optional U(1) twist applied to every site state: psi(theta, phi) *= exp(i chi(theta, phi)).
using GaugeTwist = std::function<double(double theta, double phi)>;

/// Raised when some plaquette phase comes within the guard of +-pi.
class LatticeResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LatticeChern {
    int chern{0};
    double raw_sum{0.0};             // sum of plaquette phases / 2 pi before rounding
    double max_plaquette_phase{0.0};  // largest |phase| seen
};

/// Plaquette-link (field strength) Chern number over the closed (theta, phi) surface.
/// Each plaquette contributes arg(U12 U23 U34 U41) with U_ab = <psi_a|psi_b>/|<psi_a|psi_b>|.
/// Refuses (LatticeResolutionError) when a plaquette phase exceeds pi - phase_guard.
LatticeChern lattice_chern(const ManifoldParams& params, const LatticeGrid& grid,
                           const GaugeTwist& twist = {}, double phase_guard = 0.1 * kPi);

struct ConsistencyRow {
    double t_ramp{0.0};
    double max_deviation{0.0};   // max over theta of |F_est - F_analytic|
    double mean_deviation{0.0};  // mean over theta
    double c1{0.0};
};

struct ConsistencyReport {
    std::vector<ConsistencyRow> rows;
    /// Least-squares slope of log(max_deviation) against log(t_ramp).
    double decay_exponent{0.0};
    /// The abrupt ramp start leaves a precession fringe of relative amplitude
    /// v |dn/dtheta| / |h| at theta = 0; in F it saturates at
    /// omega1^2 / (2 (delta1 + delta2)^2), independent of t_ramp.
    double transient_floor{0.0};
    bool monotone{false};  // max_deviation strictly decreasing along rows
};

/// Coherent, unit-fidelity runs for t_ramp = t_start, 2 t_start, ... (count values),
/// each on a fringe-resolving theta grid, compared pointwise with analytic_curvature.
ConsistencyReport adiabatic_consistency(const ManifoldParams& params, double t_start, int count);

}  // namespace qchern
