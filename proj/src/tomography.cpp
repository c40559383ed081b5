#include "qchern/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/core.h>

namespace qchern {

void PreparationModel::validate() const {
    if (!(ground_fidelity > 0.5 && ground_fidelity <= 1.0)) {
        throw std::invalid_argument(
            fmt::format("preparation: ground_fidelity must lie in (0.5, 1] (got {})", ground_fidelity));
    }
}

void ShotModel::validate() const {
    if (n_shots < 1) {
        throw std::invalid_argument(fmt::format("shots: n_shots must be >= 1 (got {})", n_shots));
    }
}

DensityMatrix prepare_initial(const ManifoldParams& params, const PreparationModel& prep) {
    params.validate();
    prep.validate();
    // Excited state has the opposite Bloch vector, so the mixture scales it by 2f - 1.
    const BlochVector g = ground_state(params, 0.0).bloch();
    const double c = prep.contrast();
    return {1.0, {c * g.x, c * g.y, c * g.z}};
}

BlochVector bloch_expectations(const PureState& psi) {
    const double n = psi.norm_squared();
    const BlochVector b = psi.bloch();
    return {b.x / n, b.y / n, b.z / n};
}

BlochVector bloch_expectations(const DensityMatrix& rho) {
    return {rho.r.x / rho.trace, rho.r.y / rho.trace, rho.r.z / rho.trace};
}

BlochVector bloch_expectations(const QubitState& state) {
    return std::visit([](const auto& s) { return bloch_expectations(s); }, state);
}

double generalized_force(const ManifoldParams& params, double theta, double sigma_y) {
    const double omega = manifold_point(params, theta).omega;  // pins sin(theta) = 0 at both poles
    return -0.5 * omega * sigma_y;
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(base ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

ShotEstimate sample_shots(double expectation, const ShotModel& shot) {
    shot.validate();
    // clamp absorbs integrator roundoff only
    if (!(std::abs(expectation) <= 1.0 + 1e-9)) throw std::invalid_argument("expectation outside [-1, 1]");
    const double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
    std::mt19937_64 rng(shot.rng_seed);
    long hits = 0;
    for (long i = 0; i < shot.n_shots; ++i) {
        // 53-bit uniform in [0, 1); portable unlike std::uniform_real_distribution.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        hits += (u < p_plus) ? 1 : 0;
    }
    const double n = static_cast<double>(shot.n_shots);
    const double p_hat = static_cast<double>(hits) / n;
    return {2.0 * p_hat - 1.0, 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / n)};
}

SampledBloch sample_bloch(const BlochVector& expectations, long n_shots, std::uint64_t seed) {
    return {sample_shots(expectations.x, {n_shots, derive_seed(seed, 0)}),
            sample_shots(expectations.y, {n_shots, derive_seed(seed, 1)}),
            sample_shots(expectations.z, {n_shots, derive_seed(seed, 2)})};
}

}  // namespace qchern
