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
#include "backhaul/costmodel.hpp"
#include "backhaul/deployment.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace backhaul {

enum class RoutingAlgorithm { mcst, sp, bf };

const char* to_string(RoutingAlgorithm a);
// Throws std::invalid_argument on an unknown name.
RoutingAlgorithm parse_routing_algorithm(std::string_view name);

// Single-parent routing forest rooted at the gateways, with per-SBS rates.
struct RoutingForest {
    std::vector<NodeId> gateways;
    std::vector<bool> is_gateway;
    std::vector<NodeId> next_hop;      // a gateway points at itself
    std::vector<std::size_t> hops;     // 0 at gateways
    std::vector<double> rate_bps;      // 0 at gateways
    std::vector<NodeId> gateway_of;
    std::vector<double> gateway_load_bps;  // parallel to gateways, excluding W_S
    std::vector<double> edge_load_bps;     // parallel to graph.edges()
    std::vector<std::size_t> tree_edges;   // graph edge indices in attach order
    std::vector<NodeId> attach_order;
    std::vector<NodeId> starved;           // non-gateways that received no rate
    std::size_t relaxation_rounds = 0;     // bf_routing only

    std::size_t node_count() const noexcept { return next_hop.size(); }
    std::vector<NodeId> non_gateways() const;
};

// Greedy forest growth. Each step scores every frontier edge (j in tree, v
// outside) by
//   (k + 1) (sum W + W_tmp) / (sum hop + hop_j + 1),
// where k counts attached non-gateways and W_tmp is the rate v could still get:
// min(W_max, bottleneck residual along the root path including the new edge,
// W_G - load - W_S at the root). The best edge is attached with rate W_tmp and
// the residuals on its root path are decremented. Ties go to the higher
// W_tmp, then the lower node index.
// Throws InfeasibleError if some SBS cannot reach a gateway, and
// std::invalid_argument if the graph has no capacities.
RoutingForest mcst(const LinkGraph& graph, std::span<const NodeId> gateways,
                   const TrafficParams& traffic);

// Minimum total Euclidean length to the nearest gateway, ties by hop count
// then lower parent index. Rates are assigned greedily in increasing
// path-length order with the same residual rule.
RoutingForest sp_routing(const LinkGraph& graph, std::span<const NodeId> gateways,
                         const TrafficParams& traffic);

// Minimum hop count by round-based label correction, ties by Euclidean length
// then lower parent index. Rates are assigned in increasing (hops, length)
// order with the same residual rule.
RoutingForest bf_routing(const LinkGraph& graph, std::span<const NodeId> gateways,
                         const TrafficParams& traffic);

RoutingForest route(RoutingAlgorithm algo, const LinkGraph& graph,
                    std::span<const NodeId> gateways, const TrafficParams& traffic);

// C = min(N sum W / sum hop + M W_S, M W_G), Y = mean hop over non-gateways,
// priced with the constant-load energy model. routed_load_operation_kwh uses
// the assigned rates in place of W_bar.
EvaluationReport evaluate_forest(const RoutingForest& forest, const TrafficParams& traffic,
                                 const CostParams& cost);

struct ForestCheck {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

// Independent re-verification: parent pointers acyclic and rooted at
// gateways, hop consistency, tree edges exist, per-edge load within c_l and
// per-gateway load + W_S within W_G (relative slack 1e-9).
ForestCheck check_forest(const LinkGraph& graph, const RoutingForest& forest,
                         const TrafficParams& traffic);

void write_forest_csv(std::ostream& out, const RoutingForest& forest);

} // namespace backhaul
