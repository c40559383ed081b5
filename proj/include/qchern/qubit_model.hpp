// qubit_model.hpp - Driven two-level system on an ellipsoidal parameter manifold
//
// Rotating-frame Hamiltonian H/hbar = 1/2 (Delta sz + Omega cos(phi) sx + Omega sin(phi) sy)
// with Delta = delta1 cos(theta) + delta2 and Omega = omega1 sin(theta). All frequencies
// are angular (rad/s); conversion from MHz happens once, in units.hpp.
//
// Basis: index 0 is the sz = +1 state, index 1 the sz = -1 state. The sz = -1 state
// is the relaxation target of the T1 channel.

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace qchern {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when a requested ground state sits on the Delta = Omega = 0 degeneracy.
class DegeneracyError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Ellipsoid (delta1, omega1, delta2) plus drive phase, all angular.
struct ManifoldParams {
    double delta1{0.0};
    double omega1{0.0};
    double delta2{0.0};
    double phi{0.0};

    /// Checks delta1 > 0, omega1 > 0, phi in [0, 2 pi). Throws std::invalid_argument.
    void validate() const;

    /// Same ellipsoid with a different drive phase, wrapped into [0, 2 pi).
    ManifoldParams with_phi(double new_phi) const;
};

/// Linear ramp theta(t) = pi t / t_ramp on a fixed time grid of n_steps steps.
struct RampProtocol {
    double t_ramp{0.0};
    long n_steps{0};

    void validate() const;

    double theta_at(double t) const { return kPi * t / t_ramp; }
    double velocity() const { return kPi / t_ramp; }
};

/// Pauli coefficients of H/hbar = 1/2 (hx sx + hy sy + hz sz).
struct Hamiltonian2 {
    double hx{0.0};
    double hy{0.0};
    double hz{0.0};

    double norm() const;
    /// Dense 2x2 matrix of H/hbar, row-major.
    std::array<std::array<cplx, 2>, 2> matrix() const;
    /// Eigenvalues of H/hbar, ascending.
    std::array<double, 2> eigenvalues() const;

    Hamiltonian2 operator-() const { return {-hx, -hy, -hz}; }
};

struct BlochVector {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm() const;
};

/// Pure qubit state (two complex amplitudes, sz basis).
struct PureState {
    std::array<cplx, 2> amp{cplx{1.0, 0.0}, cplx{0.0, 0.0}};

    double norm_squared() const;
    BlochVector bloch() const;
    /// |<this|other>|^2 for normalized inputs.
    double fidelity(const PureState& other) const;
    cplx overlap(const PureState& other) const;  // <this|other>
};

/// Density matrix in Bloch form rho = 1/2 (trace I + r . sigma).
struct DensityMatrix {
    double trace{1.0};
    BlochVector r{};

    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed() { return {1.0, {}}; }

    std::array<std::array<cplx, 2>, 2> matrix() const;
    /// Eigenvalues of rho, ascending.
    std::array<double, 2> eigenvalues() const;
    double min_eigenvalue() const { return eigenvalues()[0]; }
};

using QubitState = std::variant<PureState, DensityMatrix>;

/// Detuning and Rabi frequency at polar angle theta on the manifold.
struct ManifoldPoint {
    double delta{0.0};
    double omega{0.0};
};

/// Throws std::out_of_range when theta is outside [0, pi].
ManifoldPoint manifold_point(const ManifoldParams& params, double theta);

Hamiltonian2 hamiltonian_at(const ManifoldParams& params, double theta);

/// Largest |h(theta)| over theta in [0, pi]; closed form on the ellipse.
double max_field_norm(const ManifoldParams& params);

/// Default relative tolerance below which ground_state reports a degeneracy.
inline constexpr double kDegeneracyRelTol = 1e-6;

/// Lower eigenvector of h, gauge-fixed so the first amplitude is real and >= 0.
/// Throws DegeneracyError when |h| < abs_tol.
PureState ground_state(const Hamiltonian2& h, double abs_tol);

/// Uses abs_tol = kDegeneracyRelTol * max(delta1, omega1).
PureState ground_state(const ManifoldParams& params, double theta);

}  // namespace qchern
