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

// Small fixtures shared by the unit and property suites.
#pragma once

#include "backhaul/channel.hpp"
#include "backhaul/deployment.hpp"
#include "backhaul/rng.hpp"

#include <random>
#include <vector>

namespace fixture {

using backhaul::Deployment;
using backhaul::Edge;
using backhaul::LinkGraph;
using backhaul::NodeId;
using backhaul::Point;

inline Deployment points(std::vector<Point> pts, double radius = 1000.0)
{
    Deployment d;
    d.radius_m = radius;
    d.positions = std::move(pts);
    return d;
}

// Nodes 0..n-1 on the x axis, `spacing` apart, linked to nearest neighbours.
inline LinkGraph path_graph(std::size_t n, double spacing = 100.0)
{
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < n; ++v)
        edges.push_back({v, v + 1, spacing});
    return LinkGraph(n, std::move(edges));
}

inline LinkGraph star_graph(std::size_t leaves, double length = 100.0)
{
    std::vector<Edge> edges;
    for (NodeId v = 1; v <= leaves; ++v)
        edges.push_back({0, v, length});
    return LinkGraph(leaves + 1, std::move(edges));
}

// Uniform points in a disc, linked within d0.
inline LinkGraph random_graph(std::size_t n, double radius, double d0, std::uint64_t seed,
                              Deployment* out = nullptr)
{
    backhaul::ScenarioConfig cfg;
    cfg.radius_m = radius;
    cfg.d0_m = d0;
    Deployment dep = backhaul::sample_deployment_fixed_n(cfg, n, seed);
    LinkGraph g = backhaul::build_link_graph(dep, d0);
    if (out)
        *out = std::move(dep);
    return g;
}

// Independent uniform capacities in [lo, hi] bps per edge.
inline void random_capacities(LinkGraph& g, double lo, double hi, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> caps(g.edges().size());
    for (double& c : caps)
        c = u(rng);
    g.set_capacities(std::move(caps));
}

// Re-draws until the graph is connected.
inline LinkGraph connected_random_graph(std::size_t n, double radius, double d0,
                                        std::uint64_t seed, Deployment* out = nullptr)
{
    for (std::uint64_t attempt = 0;; ++attempt) {
        LinkGraph g = random_graph(n, radius, d0,
                                   backhaul::derive_seed(seed, backhaul::Stream::deployment, attempt),
                                   out);
        std::vector<bool> seen(n, false);
        std::vector<NodeId> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (const auto& nb : g.neighbors(u))
                if (!seen[nb.node]) {
                    seen[nb.node] = true;
                    ++count;
                    stack.push_back(nb.node);
                }
        }
        if (count == n)
            return g;
    }
}

} // namespace fixture
