#pragma once

#include "qchern/chern.hpp"
#include "qchern/units.hpp"

namespace qchern::testing {

inline ManifoldParams ellipse(double delta2_mhz = 0.0, double delta1_mhz = 30.0, double omega1_mhz = 10.0) {
    return {units::mhz_to_angular(delta1_mhz), units::mhz_to_angular(omega1_mhz), units::mhz_to_angular(delta2_mhz),
            0.0};
}

inline DecoherenceParams lab_decoherence() { return {units::us_to_s(22.0), units::us_to_s(9.0)}; }

inline CurvatureExperiment coherent_experiment(double delta2_mhz, double t_ramp_us, long theta_points = 51) {
    CurvatureExperiment e;
    e.manifold = ellipse(delta2_mhz);
    e.t_ramp = units::us_to_s(t_ramp_us);
    e.theta_points = theta_points;
    e.prep.ground_fidelity = 1.0;
    return e;
}

}  // namespace qchern::testing
