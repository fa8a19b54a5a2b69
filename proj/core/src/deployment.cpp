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

#include "backhaul/deployment.hpp"

#include "backhaul/csv.hpp"
#include "backhaul/errors.hpp"
#include "backhaul/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <tuple>

namespace backhaul {

double distance(const Point& a, const Point& b) noexcept
{
    return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

LinkGraph::LinkGraph(std::size_t node_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), adjacency_(node_count)
{
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u >= ed.v || ed.v >= node_count)
            throw std::invalid_argument("edge endpoints must satisfy u < v < node_count");
        if (e > 0 && edges_[e - 1].u == ed.u && edges_[e - 1].v == ed.v)
            throw std::invalid_argument("duplicate edge");
        adjacency_[ed.u].push_back({ed.v, e});
        adjacency_[ed.v].push_back({ed.u, e});
    }
    for (auto& adj : adjacency_)
        std::sort(adj.begin(), adj.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

void LinkGraph::set_capacities(std::vector<double> capacities_bps)
{
    if (capacities_bps.size() != edges_.size())
        throw std::invalid_argument("capacity vector length must equal edge count");
    capacities_ = std::move(capacities_bps);
    capacities_set_ = true;
}

std::size_t LinkGraph::find_edge(NodeId a, NodeId b) const
{
    if (a >= node_count() || b >= node_count())
        return npos;
    for (const auto& nb : adjacency_[a])
        if (nb.node == b)
            return nb.edge;
    return npos;
}

namespace {

void check_disc(const ScenarioConfig& cfg)
{
    if (!(cfg.radius_m > 0))
        throw ConfigError("radius_m must be positive");
}

Point uniform_disc_point(Rng& rng, double radius)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // Inverse CDF of the radial law F(r) = r^2 / R^2.
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace

Deployment sample_deployment(const ScenarioConfig& cfg, std::uint64_t seed)
{
    check_disc(cfg);
    if (!cfg.expected_sbs)
        throw ConfigError("sample_deployment requires expected_sbs");
    const double mean = *cfg.expected_sbs;
    if (!(mean >= 0) || !std::isfinite(mean))
        throw ConfigError("expected_sbs must be a finite non-negative number");
    Rng rng(seed);
    std::size_t count = 0;
    if (mean > 0)
        count = std::poisson_distribution<std::size_t>(mean)(rng);
    Deployment dep{cfg.radius_m, {}};
    dep.positions.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        dep.positions.push_back(uniform_disc_point(rng, cfg.radius_m));
    return dep;
}

Deployment sample_deployment_fixed_n(const ScenarioConfig& cfg, std::size_t n, std::uint64_t seed)
{
    check_disc(cfg);
    Rng rng(seed);
    Deployment dep{cfg.radius_m, {}};
    dep.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        dep.positions.push_back(uniform_disc_point(rng, cfg.radius_m));
    return dep;
}

Deployment sample_scenario(const ScenarioConfig& cfg, std::uint64_t seed)
{
    if (cfg.n_sbs)
        return sample_deployment_fixed_n(cfg, *cfg.n_sbs, seed);
    return sample_deployment(cfg, seed);
}

LinkGraph build_link_graph(const Deployment& dep, double d0_m)
{
    const auto& p = dep.positions;
    std::vector<Edge> edges;
    for (NodeId i = 0; i < p.size(); ++i)
        for (NodeId j = i + 1; j < p.size(); ++j) {
            const double len = distance(p[i], p[j]);
            if (len <= d0_m)
                edges.push_back({i, j, len});
        }
    return LinkGraph(p.size(), std::move(edges));
}

void write_deployment_csv(std::ostream& out, const Deployment& dep)
{
    CsvWriter csv(out);
    csv.header({"node_id", "x_m", "y_m"});
    for (NodeId i = 0; i < dep.size(); ++i)
        csv.row(i, dep.positions[i].x_m, dep.positions[i].y_m);
}

} // namespace backhaul
