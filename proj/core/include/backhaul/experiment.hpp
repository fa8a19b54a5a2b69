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
#include "backhaul/connectivity.hpp"
#include "backhaul/costmodel.hpp"
#include "backhaul/deployment.hpp"
#include "backhaul/routing.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace backhaul {

enum class SweepTag { fig4, fig6, fig7, fig8, fig9, fig10, fig11 };

const char* to_string(SweepTag tag);
// Unknown tags are ConfigErrors.
SweepTag parse_sweep_tag(std::string_view name);

struct SweepSpec {
    SweepTag tag = SweepTag::fig4;
    std::string variable;        // expected_sbs, n_sbs, w_g_bps, snr_db or M
    std::vector<double> grid;
    std::size_t replications = 1;
    std::string output_path;
};

// Grid and replication count used when only the tag is given.
//   fig4        expected_sbs 20..200 step 10
//   fig6        n_sbs 50..400 step 50, every M
//   fig7        w_g_bps 20..200 Gbps step 20, every M
//   fig8        snr_db -10..30 step 5, M in {1, 5, MAX_M}, MCST
//   fig9        M 1..MAX_M at the configured SNR, MCST
//   fig10/11    snr_db -10..30 step 5, M in {1, 5}, all three routings
SweepSpec default_sweep_spec(SweepTag tag, const ScenarioConfig& cfg);

void validate(const SweepSpec& spec);

struct EpochSchedule {
    std::size_t epochs = 1;
    std::size_t reopt_period = 1;  // long-scale re-optimization every k epochs
};

EpochSchedule schedule_from(const ScenarioConfig& cfg);

struct EpochReport {
    std::size_t epoch = 0;
    std::size_t placement = 0;      // index of the long-scale period
    std::uint64_t channel_seed = 0;
    std::vector<NodeId> gateways;
    std::size_t starved = 0;
    EvaluationReport report;
};

struct TwoScaleResult {
    Deployment deployment;
    std::size_t clusters = 0;
    std::vector<EpochReport> epochs;
};

// Deploys once, then per long-scale period picks (M, gateway set) by the
// uniform-rate model; within each period every epoch resamples all link
// channels, routes with MCST and prices the result with the period's fixed
// energies.
TwoScaleResult run_two_scale(const ScenarioConfig& cfg);

void write_two_scale_csv(std::ostream& out, const TwoScaleResult& result, std::uint64_t seed);

struct GatewaySweepRow {
    std::size_t n = 0;
    double w_g_bps = 0.0;
    std::size_t m = 0;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    std::size_t clusters = 0;
    bool feasible = false;
    double y = 0.0;
    double capacity_bps = 0.0;
    double energy_kwh = 0.0;
    double cost_eur = 0.0;
    double efficiency_mbps_per_eur = 0.0;
};

struct RoutingSweepRow {
    double snr_db = 0.0;
    std::size_t m = 0;
    RoutingAlgorithm algo = RoutingAlgorithm::mcst;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t deploy_attempts = 0;
    std::size_t starved = 0;
    double y = 0.0;
    double capacity_bps = 0.0;
    double energy_kwh = 0.0;
    double cost_eur = 0.0;
    double efficiency_mbps_per_eur = 0.0;
};

enum class GatewaySweepVariable { n_sbs, w_g_bps };

// e-vs-M curves (M = 1..MAX_M) for every grid value and replication. The
// replication seed is shared across grid values so curves are paired.
std::vector<GatewaySweepRow> gateway_count_sweep(const ScenarioConfig& cfg,
                                                 GatewaySweepVariable variable,
                                                 const std::vector<double>& grid,
                                                 std::size_t replications);

// For every replication: one deployment (redrawn until it has at most
// min(m_values) clusters), one small-scale channel draw reused across SNR
// points, and gateway placement per M. Every (SNR, M, algorithm) triple is
// routed on that shared realization.
std::vector<RoutingSweepRow> routing_sweep(const ScenarioConfig& cfg,
                                           const std::vector<double>& snr_grid,
                                           const std::vector<std::size_t>& m_values,
                                           const std::vector<RoutingAlgorithm>& algos,
                                           std::size_t replications);

struct SweepOutput {
    SweepTag tag = SweepTag::fig4;
    std::uint64_t seed = 0;
    std::vector<ConnectivityRow> connectivity;
    std::vector<GatewaySweepRow> gateway;
    std::vector<RoutingSweepRow> routing;
};

SweepOutput run_sweep(const SweepSpec& spec, const ScenarioConfig& cfg);
void write_sweep_csv(std::ostream& out, const SweepOutput& output);

void write_gateway_sweep_csv(std::ostream& out, const std::vector<GatewaySweepRow>& rows);
void write_routing_sweep_csv(std::ostream& out, const std::vector<RoutingSweepRow>& rows);

// Largest relative uplift over SNR of the mean (over replications) metric of
// MCST against `baseline`, restricted to gateway count m.
struct Uplift {
    double value = 0.0;
    double at_snr_db = 0.0;
};
enum class UpliftMetric { capacity, efficiency };
Uplift max_uplift(const std::vector<RoutingSweepRow>& rows, std::size_t m,
                  RoutingAlgorithm baseline, UpliftMetric metric = UpliftMetric::capacity);

} // namespace backhaul
