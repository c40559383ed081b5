// report.hpp - The CLI commands as library calls producing CSV streams
//
// Every stream starts with a '#' header holding the tool version, the command and the
// fully resolved configuration; data rows follow as plain CSV. Results depend only on
// the configuration (never on worker count), so identical configs give identical bytes.

#pragma once

#include <ostream>
#include <string>

#include "qchern/config.hpp"

namespace qchern {

inline constexpr const char* kVersion = QCHERN_VERSION;

void write_header(std::ostream& os, const std::string& command, const ExperimentConfig& cfg);

/// t_meas_us, theta, sx, sy, sz [, sx_err, sy_err, sz_err]
void cmd_tomography(const ExperimentConfig& cfg, std::ostream& os);

/// Curvature profile rows plus a trailing '# summary:' record. Returns the result.
ChernResult cmd_chern(const ExperimentConfig& cfg, std::ostream& os);

/// t_ramp_us, delta2_over_delta1, c1_raw, c1_err, c1_corrected per t_ramp in the list,
/// then '# width' and '# plateau' records per t_ramp.
void cmd_transition(const ExperimentConfig& cfg, std::ostream& os);

/// C1(t_ramp) table to `table`, long-form curvature map (t_ramp_us, theta, f_est, f_err,
/// f_analytic) to `map`.
void cmd_ramprate(const ExperimentConfig& cfg, std::ostream& table, std::ostream& map);

/// theta, curvature rows of the closed form, then '# lattice_chern' and the
/// adiabatic-consistency rows as comments.
void cmd_oracle(const ExperimentConfig& cfg, std::ostream& os);

}  // namespace qchern
