// chern.hpp - Berry curvature from the nonadiabatic sy response, Chern integration, sweeps
//
// A ramp theta(t) = pi t / t_ramp at fixed phi = 0 tilts the qubit out of the
// instantaneous ground state by an amount linear in v = pi / t_ramp. The estimator
//
//   F(theta) = omega1 sin(theta) <sy> / (2 v)
//
// is oriented so that an ellipsoid enclosing the degeneracy (|delta2| < delta1) integrates
// to C1 = +1 with the outward normal. Cylindrical symmetry reduces the closed-surface
// integral to C1 = int_0^pi F dtheta.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qchern/lindblad.hpp"
#include "qchern/qubit_model.hpp"
#include "qchern/tomography.hpp"

namespace qchern {

/// Everything needed to run one ramp-and-tomography experiment.
struct CurvatureExperiment {
    ManifoldParams manifold{};
    double t_ramp{1e-6};  // s
    long theta_points{51};
    long n_steps{0};  // 0 selects step_control
    std::optional<DecoherenceParams> decoherence{};  // empty = closed system
    PreparationModel prep{};
    std::optional<long> n_shots{};  // empty = exact expectation values
    std::uint64_t seed{0};

    void validate() const;
    RampProtocol protocol() const;
};

struct CurvatureSample {
    double t_meas{0.0};
    double theta{0.0};
    BlochVector bloch{};      // measured (exact or shot-sampled) expectations
    BlochVector bloch_err{};  // zero in exact mode
    double f_est{0.0};
    double f_err{0.0};
};

struct CurvatureProfile {
    std::vector<CurvatureSample> samples;
    CurvatureExperiment experiment{};
    long n_steps_used{0};
};

struct ChernResult {
    double c1_raw{0.0};
    double c1_err{0.0};
    double c1_corrected{0.0};
    double c1_corrected_err{0.0};
    std::string quadrature{"trapezoid"};
};

/// omega1 sin(theta) sigma_y / (2 v), v = pi / t_ramp.
double curvature_from_response(const ManifoldParams& params, const RampProtocol& protocol, double theta,
                               double sigma_y);

/// Trapezoid over theta; f_err propagated in quadrature. Requires >= 3 strictly increasing
/// samples with first theta = 0 and last theta = pi. The fidelity correction uses the
/// profile's preparation model.
ChernResult chern_integrate(const CurvatureProfile& profile);

/// c1 / (2f - 1).
double fidelity_correction(double c1_raw, const PreparationModel& prep);

/// Evolves once from the prepared state and reads out at theta_points uniform t_meas in [0, t_ramp].
CurvatureProfile run_curvature_experiment(const CurvatureExperiment& config);

/// Standard error of C1 that n_shots per axis would produce, from exact expectations.
double propagated_shot_error(const CurvatureProfile& exact_profile, long n_shots);

/// Smallest n_shots with propagated_shot_error <= target.
long shots_for_target_error(const CurvatureProfile& exact_profile, double target);

/// theta points giving at least `samples_per_period` readouts per local precession period
/// (|h| / 2 pi) over the whole ramp. The linear ramp starts abruptly, leaving a
/// precession fringe on top of the linear response; it aliases on coarse grids.
long fringe_resolving_theta_points(const ManifoldParams& params, double t_ramp, double samples_per_period = 4.0);

// ---- sweeps ---------------------------------------------------------------------

struct TransitionPoint {
    double delta2_over_delta1{0.0};
    ChernResult chern{};
};

/// One experiment per delta2 = ratio * delta1; point i uses seed derive_seed(base.seed, i).
std::vector<TransitionPoint> transition_sweep(const std::vector<double>& delta2_ratios,
                                              const CurvatureExperiment& base, unsigned workers = 1);

struct RampRatePoint {
    double t_ramp{0.0};
    CurvatureProfile profile{};
    ChernResult chern{};
};

std::vector<RampRatePoint> ramp_rate_sweep(const std::vector<double>& t_ramps, const CurvatureExperiment& base,
                                           unsigned workers = 1);

/// 29 uniform delta2/delta1 values over [-1/3, 2] (plateau bins).
std::vector<double> coarse_transition_grid();
/// 15 uniform delta2/delta1 values over [0.8, 1.2] (width measurement).
std::vector<double> fine_transition_grid();
/// Coarse and fine grids merged, sorted, duplicates removed.
std::vector<double> default_transition_grid();

/// t_ramp in seconds: 0.1, 0.2, ..., 3.0 us.
std::vector<double> default_ramp_rate_grid();

/// Distance in delta2/delta1 between the first downward crossings of C1 = upper and then
/// C1 = lower, using piecewise-linear interpolation of the sorted sweep. Empty if either
/// crossing is missing.
std::optional<double> transition_width(const std::vector<TransitionPoint>& sweep, double upper = 0.75,
                                       double lower = 0.25);

struct PlateauAverages {
    double below{0.0};  // mean raw C1 over delta2/delta1 < 1
    double above{0.0};  // mean raw C1 over delta2/delta1 > 1
    std::size_t n_below{0};
    std::size_t n_above{0};
};

PlateauAverages plateau_averages(const std::vector<TransitionPoint>& sweep);

}  // namespace qchern
