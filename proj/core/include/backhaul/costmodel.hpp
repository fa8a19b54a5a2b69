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

#include "backhaul/config.hpp"

#include <cstddef>
#include <span>

namespace backhaul {

// Long-run delivered rate of a cluster with M gateways:
//   min(sum_W / Y + M * W_S, M * W_G).
// Throws std::domain_error if Y < 1 or M < 1.
double transport_capacity(double sum_w_bps, double avg_transmissions, std::size_t m,
                          double w_s_bps, double w_g_bps);

// N * W / Y + M * W_S, uniform per-SBS rate; the caller applies the M * W_G cap.
double simplified_capacity(std::size_t n, double w_bps, double avg_transmissions, std::size_t m,
                           double w_s_bps);

// Arithmetic mean hop count. Throws std::domain_error on an empty sequence or
// a hop count below 1.
double average_hops(std::span<const std::size_t> hops);

// N * sum(W_i) / sum(hop_i). Throws std::domain_error on mismatched lengths.
double weighted_capacity(std::span<const double> rates_bps, std::span<const std::size_t> hops);

struct EnergyBreakdown {
    double gateway_power_w = 0.0;  // P_OP1
    double sbs_power_w = 0.0;      // P_OP2
    double operation_kwh = 0.0;    // E_OP over the lifetime
};

EnergyBreakdown operation_energy_breakdown(std::size_t m, std::size_t n, const CostParams& p,
                                           double w_g_bps, double w_bar_bps);

// (P_OP1 + P_OP2) * T_lifetime in kWh, with
//   P_OP1 = M (a P_norm W_G / W_0 + b),  P_OP2 = N (a P_norm W_bar / W_0 + b).
double operation_energy(std::size_t m, std::size_t n, const CostParams& p, double w_g_bps,
                        double w_bar_bps);

// Embodied energy as a share f of the whole lifetime energy: E_EM = E_OP f / (1 - f).
double embodied_energy(double operation_kwh, const CostParams& p);

// Lifetime cost in EUR: zeta (E_EM + E_OP) + M E_G.
double total_cost(std::size_t m, double operation_kwh, const CostParams& p);

// Delivered bits per second per EUR. Throws std::domain_error on a zero
// denominator or negative inputs.
double cost_efficiency(double capacity_bps, std::size_t m, double operation_kwh,
                       const CostParams& p);

inline double to_mbps_per_eur(double bps_per_eur) { return bps_per_eur / 1e6; }

struct EvaluationReport {
    std::size_t m = 0;
    std::size_t n = 0;                 // non-gateway SBS count
    double y = 0.0;                    // average transmissions per bit
    double capacity_bps = 0.0;         // C(M, N), gateway-capped
    double per_gateway_bps = 0.0;      // C / M
    double operation_kwh = 0.0;
    double embodied_kwh = 0.0;
    double cost_eur = 0.0;
    double efficiency_bps_per_eur = 0.0;
    // Operation energy using the routed per-SBS loads instead of W_bar.
    double routed_load_operation_kwh = 0.0;
};

// Fills the energy and efficiency fields of a report whose m, n and
// capacity_bps are already set.
void price_report(EvaluationReport& report, const CostParams& p, double w_g_bps,
                  double w_bar_bps);

} // namespace backhaul
