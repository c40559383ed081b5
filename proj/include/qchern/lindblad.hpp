// lindblad.hpp - Fixed-step RK4 integration of the driven qubit, closed and open
//
// Pure states are propagated as spinors under i d|psi>/dt = (H/hbar)|psi>.
// Mixed states are propagated in Bloch form (trace, r) under the Lindblad equation
// with jump operators sqrt(gamma1) s- (s- lowers to sz = -1) and sqrt(gamma_phi / 2) sz,
// which reduces to
//
//   dr/dt = h x r - gamma2 (rx, ry, 0) - gamma1 (0, 0, rz + trace),
//   gamma2 = gamma1 / 2 + gamma_phi = 1 / T2*.
//
// Every RK4 stage evaluates the Hamiltonian at its own stage time.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qchern/qubit_model.hpp"

namespace qchern {

/// Integrator tolerance exceeded; the message carries the suggested refinement.
class StepSizeError : public std::runtime_error {
public:
    StepSizeError(const std::string& what, long suggested_steps)
        : std::runtime_error(what), suggested_steps_(suggested_steps) {}
    long suggested_steps() const { return suggested_steps_; }

private:
    long suggested_steps_;
};

/// Density matrix lost positivity beyond tolerance.
class PositivityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DecoherenceParams {
    double t1{0.0};       // s; infinity disables relaxation
    double t2_star{0.0};  // s; infinity disables dephasing

    /// t1 > 0, t2_star > 0, t2_star <= 2 t1. Throws std::invalid_argument.
    void validate() const;

    /// T1 = T2* = infinity: Lindblad evolution reduces to unitary evolution.
    static DecoherenceParams coherent();
};

struct JumpRates {
    double gamma1{0.0};     // 1/T1
    double gamma_phi{0.0};  // 1/T2* - 1/(2 T1)

    double gamma2() const { return 0.5 * gamma1 + gamma_phi; }
};

JumpRates jump_rates(const DecoherenceParams& d);

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;

    std::size_t size() const { return times.size(); }
};

using PureTrajectory = Trajectory<PureState>;
using MixedTrajectory = Trajectory<DensityMatrix>;

/// Time-dependent Hamiltonian t -> H(t)/hbar.
using HamiltonianSchedule = std::function<Hamiltonian2(double)>;

HamiltonianSchedule ramp_schedule(const ManifoldParams& params, const RampProtocol& protocol);

struct IntegrationOptions {
    /// Record every k-th step (the final state is always recorded).
    long record_stride{1};
    /// Pure evolution: |1 - <psi|psi>| above this aborts with StepSizeError.
    double norm_abort_tol{1e-6};
    /// Mixed evolution: minimum eigenvalue below -this aborts with PositivityError.
    double positivity_tol{1e-8};
};

/// Integrates n_steps uniform RK4 steps over [0, t_end].
PureTrajectory evolve_unitary(const HamiltonianSchedule& h, const PureState& psi0, double t_end,
                              long n_steps, const IntegrationOptions& opts = {});

MixedTrajectory evolve_lindblad(const HamiltonianSchedule& h, const DensityMatrix& rho0,
                                const JumpRates& rates, double t_end, long n_steps,
                                const IntegrationOptions& opts = {});

/// Ramp evolution up to t_end <= t_ramp on n_steps * (t_end / t_ramp) steps (rounded up).
PureTrajectory evolve_unitary(const ManifoldParams& params, const RampProtocol& protocol,
                              const PureState& psi0, double t_end, const IntegrationOptions& opts = {});

MixedTrajectory evolve_lindblad(const ManifoldParams& params, const RampProtocol& protocol,
                                const DensityMatrix& rho0, const DecoherenceParams& d, double t_end,
                                const IntegrationOptions& opts = {});

/// Minimum resolution of the fastest precession period.
inline constexpr double kMinStepsPerPeriod = 40.0;
/// Target global phase error of the RK4 Bloch rotation over one ramp.
inline constexpr double kPhaseErrorBudget = 1e-7;

/// Default step count for a ramp: at least kMinStepsPerPeriod steps per fastest period,
/// refined until the accumulated RK4 rotation error (~ Phi x^4 / 120 for total
/// precession angle Phi and per-step angle x) stays under kPhaseErrorBudget.
/// If align_to > 0 the result is rounded up to a multiple of it.
long step_control(const RampProtocol& protocol, const ManifoldParams& params, long align_to = 0);

}  // namespace qchern
