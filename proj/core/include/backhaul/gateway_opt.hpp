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

#include "backhaul/clustering.hpp"
#include "backhaul/config.hpp"
#include "backhaul/costmodel.hpp"
#include "backhaul/deployment.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace backhaul {

inline constexpr std::size_t unreachable_hops = std::numeric_limits<std::size_t>::max();

// Work counter for complexity regressions: BFS node expansions plus edge scans.
struct OpCounter {
    std::uint64_t operations = 0;
};

// Minimum-hop association of every SBS with its nearest gateway.
struct HopAssignment {
    std::vector<std::size_t> hop;     // 0 at gateways, unreachable_hops if cut off
    std::vector<NodeId> serving;      // serving gateway; undefined if unreachable
    std::size_t non_gateways = 0;
    std::size_t unreachable = 0;
    std::size_t hop_sum = 0;          // over reachable non-gateways
    double y_min = 0.0;               // mean hop over non-gateways; NaN if there are none

    std::vector<NodeId> unreachable_nodes() const;
};

// Multi-source BFS over the unit-weight link graph. Never throws on
// unreachable nodes; they are counted instead. Ties in the serving gateway
// go to the gateway listed first.
HopAssignment hop_assignment(const LinkGraph& graph, std::span<const NodeId> gateways,
                             OpCounter* ops = nullptr);

// As hop_assignment, but an SBS unreachable from every gateway raises
// InfeasibleError carrying the stranded set.
HopAssignment know_gateway(const LinkGraph& graph, std::span<const NodeId> gateways);

struct GatewaySelection {
    std::vector<NodeId> gateways;      // in selection order
    std::vector<NodeId> non_gateways;  // ascending
    double y_min = 0.0;                // NaN when no non-gateway SBS remains
    double y_greedy = 0.0;             // Y before swap refinement
    bool no_non_gateways = false;
    std::size_t hop_sum = 0;
    std::size_t greedy_hop_sum = 0;
    std::vector<std::size_t> hop;
    std::vector<NodeId> serving;
};

struct GatewaySearchOptions {
    std::size_t swap_passes = 1;
    OpCounter* ops = nullptr;
};

// Greedy gateway insertion followed by single-swap refinement. Candidates are
// ranked by (unreachable SBS count, total hops), so every cluster receives a
// gateway before any cluster receives a second one. Ties go to the lowest node
// index; a swap must strictly improve on the incumbent.
// Throws InfeasibleError if M is below the cluster count.
GatewaySelection unknow_gateway(const LinkGraph& graph, std::size_t m,
                                const GatewaySearchOptions& options = {});

// Exhaustive minimizer of the same objective over all M-subsets. Refuses
// (std::length_error) when C(n, M) exceeds max_subsets.
GatewaySelection brute_force_gateways(const LinkGraph& graph, std::size_t m,
                                      std::uint64_t max_subsets = 1'000'000);

// Gateways per cluster: one each, the rest handed out by largest deficit
// against the size-proportional quota. Requires m >= cluster count.
std::vector<std::size_t> allocate_gateways(std::span<const std::size_t> cluster_sizes,
                                           std::size_t m);

// Runs unknow_gateway independently inside every connection cluster with the
// given allocation and stitches the result together.
GatewaySelection place_gateways(const LinkGraph& graph, const ClusterPartition& clusters,
                                std::size_t m, const GatewaySearchOptions& options = {});

struct GatewayCountPoint {
    std::size_t m = 0;
    bool feasible = false;
    GatewaySelection selection;
    EvaluationReport report;
};

struct GatewayCountResult {
    std::size_t m_opt = 0;
    std::vector<NodeId> gateways;
    std::vector<Point> gateway_positions;
    std::vector<GatewayCountPoint> curve;  // one entry per M = 1..MAX_M

    const GatewayCountPoint& best() const;
};

// Capacity with uniform per-SBS rate W (N W / Y + M W_S, capped at M W_G).
EvaluationReport evaluate_placement(const GatewaySelection& sel, std::size_t n_total,
                                    const ScenarioConfig& cfg);

// Sweeps M = 1..MAX_M, places gateways, prices each placement and returns the
// cost-efficiency maximizer. Points with M below the cluster count are marked
// infeasible; InfeasibleError if none is feasible.
GatewayCountResult optimize_gateway_count(const Deployment& dep, const LinkGraph& graph,
                                          const ScenarioConfig& cfg,
                                          const GatewaySearchOptions& options = {});

void write_gateway_curve_csv(std::ostream& out, const GatewayCountResult& result);
void write_gateway_positions_csv(std::ostream& out, const GatewayCountResult& result);

} // namespace backhaul
