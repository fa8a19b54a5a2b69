// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The backhaul authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace backhaul {

struct ChannelParams {
    double wavelength_m = 0.005;
    double pathloss_exponent = 2.0;
    double shadowing_db = 0.0;           // std-dev of the log-normal shadowing term
    int paths = 3;                       // propagation paths per link
    double antenna_spacing_m = 0.0025;
    int n_t = 16;
    int n_r = 128;
    int n_rf_t = 4;
    int n_rf_r = 4;
    int n_s = 2;                         // data streams per link
    double bandwidth_hz = 1e9;
    double p_max_w = 1.0;
    double snr_db = 0.0;                 // 10 log10(P_i / sigma^2), before path loss
    int transmitters_per_receiver = 1;   // Q, for the N_R >= Q N_T check

    double snr_linear() const;
};

struct TrafficParams {
    double w_max_bps = 10e9;  // W: per-SBS backhaul rate ceiling
    double w_s_bps = 1e9;     // W_S: traffic generated by each gateway itself
    double w_g_bps = 100e9;   // W_G: gateway forwarding ceiling
    double w_bar_bps = 10e9;  // lifetime-average SBS rate in the energy model
};

struct CostParams {
    double zeta_eur_per_kwh = 1.0;
    double gateway_cost_eur = 3900.0;
    double power_a = 7.84;
    double power_b_w = 71.5;
    double p_norm_w = 1.0;
    double w0_bps = 1e9;
    double lifetime_h = 5.0 * 8760.0;
    double embodied_fraction = 0.2;
};

// How the scenario-level operating SNR maps onto ChannelParams::snr_db.
enum class SnrReference {
    transmit,  // scenario SNR is P_i / sigma^2 itself
    d0,        // scenario SNR is the mean per-antenna receive SNR at distance D0
    stream,    // mean per-stream SNR after array gain N_T N_R / (eta N_S), at D0
};

struct ScenarioConfig {
    double radius_m = 500.0;
    double d0_m = 200.0;
    // Exactly one of these is set. Density is expressed as the expected SBS
    // count per macro cell, i.e. mu * pi * R^2.
    std::optional<double> expected_sbs = 100.0;
    std::optional<std::size_t> n_sbs;

    TrafficParams traffic;
    ChannelParams channel;
    CostParams cost;

    double snr_db = 10.0;
    SnrReference snr_reference = SnrReference::stream;

    std::size_t max_m = 10;
    std::uint64_t seed = 1;
    std::size_t epochs = 1;
    std::size_t reopt_period = 1;
    std::size_t swap_passes = 1;
    std::size_t mc_trials = 100000;
    std::size_t replications = 20;

    // Per-area intensity mu in 1/m^2 (requires expected_sbs).
    double density_per_m2() const;
};

// Throws ConfigError describing the first violated invariant.
void validate(const ScenarioConfig& cfg);
void validate(const ChannelParams& p);
void validate(const CostParams& p);

// Plain-text "key = value" format, '#' starts a comment. Unknown keys and
// malformed values are ConfigErrors. Keys not present keep their defaults.
ScenarioConfig parse_config(std::istream& in, const std::string& source_name = "<stream>");
ScenarioConfig load_config(const std::string& path);
void write_config(std::ostream& out, const ScenarioConfig& cfg);

// ChannelParams with snr_db set to P_i/sigma^2 for the requested scenario SNR.
ChannelParams channel_for_snr(const ScenarioConfig& cfg, double scenario_snr_db);

const char* to_string(SnrReference r);

} // namespace backhaul
