// units.hpp - Boundary conversions between lab units (MHz, us) and SI angular units

#pragma once

#include "qchern/qubit_model.hpp"

namespace qchern::units {

/// Ordinary frequency in MHz -> angular frequency in rad/s.
inline constexpr double mhz_to_angular(double f_mhz) { return kTwoPi * f_mhz * 1e6; }
inline constexpr double angular_to_mhz(double w) { return w / (kTwoPi * 1e6); }

inline constexpr double us_to_s(double t_us) { return t_us * 1e-6; }
inline constexpr double s_to_us(double t_s) { return t_s * 1e6; }

}  // namespace qchern::units
