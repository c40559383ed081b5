// tomography.hpp - State preparation, Bloch-vector readout and projective shot noise

#pragma once

#include <cstdint>

#include "qchern/qubit_model.hpp"

namespace qchern {

/// Post-selected preparation: ground population f, excited population 1 - f.
struct PreparationModel {
    double ground_fidelity{0.988};

    /// 0.5 < f <= 1. Throws std::invalid_argument.
    void validate() const;
    /// Population imbalance 2f - 1 that scales every linear response.
    double contrast() const { return 2.0 * ground_fidelity - 1.0; }
};

/// Shots per tomography axis and theta point used for the reference error budget:
/// the default 51-point, 1 us dissipative experiment then carries sigma(C1) ~ 0.022 raw,
/// ~ 0.023 after the fidelity correction.
inline constexpr long kReferenceShots = 20000;

struct ShotModel {
    long n_shots{1};
    std::uint64_t rng_seed{0};

    void validate() const;
};

/// rho0 = f |g><g| + (1 - f) |e><e| in the eigenbasis of H(theta = 0).
DensityMatrix prepare_initial(const ManifoldParams& params, const PreparationModel& prep);

BlochVector bloch_expectations(const PureState& psi);
BlochVector bloch_expectations(const DensityMatrix& rho);
BlochVector bloch_expectations(const QubitState& state);

/// <f_phi> = -<dH/dphi>|_{phi=0} = -(omega1 sin(theta) / 2) <sy>, in rad/s.
double generalized_force(const ManifoldParams& params, double theta, double sigma_y);

struct ShotEstimate {
    double estimate{0.0};
    double std_error{0.0};
};

/// n_shots Bernoulli draws with P(+1) = (1 + expectation) / 2.
/// estimate = 2 p - 1, std_error = 2 sqrt(p (1 - p) / n_shots).
ShotEstimate sample_shots(double expectation, const ShotModel& shot);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derived stream seed: mix64(base ^ mix64(index + golden-ratio increment)).
/// Sweeps chain it: seed for sweep point i, then tomography point j, then axis k.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Per-axis shot sampling of a Bloch vector; axis k uses derive_seed(seed, k).
struct SampledBloch {
    ShotEstimate x, y, z;
};
SampledBloch sample_bloch(const BlochVector& expectations, long n_shots, std::uint64_t seed);

}  // namespace qchern
