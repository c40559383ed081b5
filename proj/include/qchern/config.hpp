// config.hpp - Flat key = value experiment configuration in lab units (MHz, us)
//
//   # comment
//   delta1_mhz = 30
//   sweep_values = 0, 0.5, 1.5
//
// Unknown keys and malformed values raise ConfigError naming the offending key.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qchern/chern.hpp"

namespace qchern {

class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class SweepAxis { delta2, t_ramp };

struct ExperimentConfig {
    // manifold, ordinary frequencies
    double delta1_mhz{30.0};
    double omega1_mhz{10.0};
    double delta2_mhz{0.3};
    // protocol
    double t_ramp_us{1.0};
    long theta_points{51};
    long n_steps{0};  // 0 = automatic
    // decoherence
    bool dissipation{true};
    double t1_us{22.0};
    double t2_star_us{9.0};
    // preparation and readout
    double fidelity{0.988};
    std::optional<long> shots{};  // empty = exact
    std::uint64_t seed{1};
    // sweeps; values are delta2/delta1 ratios or t_ramp in us depending on the axis
    std::optional<SweepAxis> sweep_axis{};
    std::optional<std::vector<double>> sweep_values{};
    std::optional<std::vector<double>> t_ramp_list_us{};
    // oracle
    long lattice_points{64};
    double consistency_t_start_us{0.25};
    int consistency_count{6};
    // execution
    unsigned workers{1};
    std::string out{};

    void validate() const;
    CurvatureExperiment to_experiment() const;
    /// Every key with its resolved value, in a fixed order.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Applies one key = value pair. Throws ConfigError.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

std::string to_string(SweepAxis axis);

}  // namespace qchern
