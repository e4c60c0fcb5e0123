// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>

#include "qshutter/barrier.hpp"
#include "qshutter/propagator.hpp"

namespace qshutter {

/// Run configuration, parsed fail-closed from a single JSON document:
/// unknown keys anywhere are an error, and exactly one of E0_eV /
/// k0_per_nm selects the incident energy.
struct RunConfig {
    struct Barrier {
        double V0_eV = 0.0;
        double d_nm = 0.0;
        double m_ratio = 0.0;
    } barrier;

    struct Packet {
        std::optional<double> E0_eV;
        std::optional<double> k0_per_nm;
        double delta_over_k0 = 0.0;
    } packet;

    struct Poles {
        int count_per_quadrant = 1000;
    } poles;

    struct Scan {
        double t_min_over_tf = 0.01;
        double t_max_over_tf = 5.0;
        int steps = 2000;
        std::optional<double> x_obs_nm;  ///< defaults to the barrier edge d
    } scan;

    struct Output {
        std::optional<std::string> format;  ///< csv | json, per-command default
        std::optional<std::string> path;    ///< default stdout
    } output;

    BarrierParams barrier_params() const;
    PacketParams packet_params() const;
    double x_obs() const { return scan.x_obs_nm.value_or(barrier.d_nm); }
};

/// Central wave number implied by the config (direct, or from E0).
double k0_value(const RunConfig& cfg);

/// Parses and validates the JSON text of a config file.
/// Throws ConfigError with a human-readable reason.
RunConfig parse_config(const std::string& json_text);

RunConfig load_config_file(const std::string& path);

}  // namespace qshutter
