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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace backhaul {

using NodeId = std::size_t;

struct Point {
    double x_m = 0.0;
    double y_m = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b) noexcept;

// SBS coordinates in metres, origin at the macro-cell centre.
struct Deployment {
    double radius_m = 0.0;
    std::vector<Point> positions;

    std::size_t size() const noexcept { return positions.size(); }
    friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct Edge {
    NodeId u = 0;  // u < v
    NodeId v = 0;
    double length_m = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
    NodeId node;
    std::size_t edge;
};

// Undirected unit-disk graph. Edges are sorted by (u, v); capacities, once
// sampled, are parallel to edges.
class LinkGraph {
public:
    LinkGraph() = default;
    LinkGraph(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Neighbor> neighbors(NodeId v) const { return adjacency_.at(v); }

    bool has_capacities() const noexcept { return capacities_set_; }
    std::span<const double> capacities() const noexcept { return capacities_; }
    double capacity(std::size_t edge) const { return capacities_.at(edge); }
    void set_capacities(std::vector<double> capacities_bps);

    // Index of edge {a, b} or npos.
    std::size_t find_edge(NodeId a, NodeId b) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<double> capacities_;
    bool capacities_set_ = false;
};

// Poisson(expected_sbs) points uniform on the disc of radius R.
Deployment sample_deployment(const ScenarioConfig& cfg, std::uint64_t seed);

// Exactly n points, i.i.d. uniform on the disc.
Deployment sample_deployment_fixed_n(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed);

// Dispatches on whichever of expected_sbs / n_sbs the config carries.
Deployment sample_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

// Edge (i, j) iff distance(i, j) <= d0.
LinkGraph build_link_graph(const Deployment& dep, double d0_m);

void write_deployment_csv(std::ostream& out, const Deployment& dep);

} // namespace backhaul
