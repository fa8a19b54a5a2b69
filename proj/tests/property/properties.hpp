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

// Randomized invariant checks over routing forests, channel capacities and
// the efficiency objective.
#pragma once

#include "backhaul/channel.hpp"
#include "backhaul/clustering.hpp"
#include "backhaul/config.hpp"
#include "backhaul/gateway_opt.hpp"
#include "backhaul/routing.hpp"

#include "support.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace property {

using namespace backhaul;

struct Tally {
    std::string name;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok) {
            if (violations == 0)
                first_failure = what;
            ++violations;
        }
    }
};

struct Report {
    Tally validity{"forest validity"};
    Tally feasibility{"flow feasibility"};
    Tally determinism{"determinism per seed"};
    Tally snr_monotone{"capacity monotone in SNR"};
    Tally argmax{"efficiency argmax equals capacity argmax"};
    std::size_t cases = 0;
    std::size_t skipped = 0;

    std::vector<const Tally*> tallies() const
    {
        return {&validity, &feasibility, &determinism, &snr_monotone, &argmax};
    }
    std::size_t violations() const
    {
        std::size_t v = 0;
        for (const Tally* t : tallies())
            v += t->violations;
        return v;
    }
};

struct Case {
    LinkGraph graph;
    std::vector<NodeId> gateways;
    ChannelParams channel;
    TrafficParams traffic;
    CostParams cost;
    std::uint64_t channel_seed = 0;
};

inline Case make_case(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    Case c;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(8, 80)(rng);
    c.graph = fixture::random_graph(n, 500, uni(140, 260), seed);
    const ClusterPartition clusters = form_clusters(c.graph);
    const std::size_t lo = clusters.count();
    const std::size_t hi = std::min(n, lo + 5);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    c.gateways = place_gateways(c.graph, clusters, m).gateways;

    ScenarioConfig cfg;
    cfg.channel.shadowing_db = std::array<double, 3>{0.0, 4.0, 8.0}[rng() % 3];
    c.channel = channel_for_snr(cfg, uni(-10, 30));
    c.traffic.w_max_bps = uni(1e9, 10e9);
    c.traffic.w_s_bps = uni(0, 2e9);
    c.traffic.w_g_bps = uni(20e9, 200e9);
    c.channel_seed = rng();
    assign_capacities(c.graph, c.channel, c.channel_seed);
    return c;
}

// Walks every parent chain and recomputes loads from the rates alone.
inline void check_forest_independently(const Case& c, const RoutingForest& f, Report& rep,
                                       const std::string& tag)
{
    const LinkGraph& g = c.graph;
    const std::size_t n = g.node_count();
    std::vector<double> edge_load(g.edges().size(), 0.0);
    std::vector<double> gw_load(n, 0.0);
    bool valid = f.node_count() == n && check_forest(g, f, c.traffic).ok();
    for (NodeId v = 0; valid && v < n; ++v) {
        if (f.is_gateway[v]) {
            valid = f.next_hop[v] == v && f.hops[v] == 0 &&
                    std::count(c.gateways.begin(), c.gateways.end(), v) == 1;
            continue;
        }
        std::size_t steps = 0;
        NodeId u = v;
        while (!f.is_gateway[u] && steps <= n) {
            const std::size_t e = g.find_edge(u, f.next_hop[u]);
            if (e == LinkGraph::npos) {
                valid = false;
                break;
            }
            edge_load[e] += f.rate_bps[v];
            u = f.next_hop[u];
            ++steps;
        }
        valid = valid && f.is_gateway[u] && steps == f.hops[v] && f.gateway_of[v] == u;
        gw_load[u] += f.rate_bps[v];
    }
    for (NodeId gw : c.gateways)
        valid = valid && gw < n && f.is_gateway[gw];
    rep.validity.record(valid, tag);
    if (!valid)
        return;

    bool feasible = true;
    for (std::size_t e = 0; e < edge_load.size(); ++e)
        feasible = feasible && edge_load[e] <= g.capacity(e) * (1 + 1e-9) + 1e-3;
    for (NodeId gw : c.gateways)
        feasible = feasible &&
                   gw_load[gw] + c.traffic.w_s_bps <= c.traffic.w_g_bps * (1 + 1e-9) + 1e-3;
    for (NodeId v = 0; v < n; ++v)
        feasible = feasible && f.rate_bps[v] >= 0 &&
                   f.rate_bps[v] <= c.traffic.w_max_bps * (1 + 1e-12);
    rep.feasibility.record(feasible, tag);
}

inline void run_case(std::uint64_t seed, Report& rep)
{
    ++rep.cases;
    const Case c = make_case(seed);
    const RoutingAlgorithm algos[] = {RoutingAlgorithm::mcst, RoutingAlgorithm::sp,
                                      RoutingAlgorithm::bf};
    const std::string tag = "case seed " + std::to_string(seed);

    std::vector<RoutingForest> forests;
    for (RoutingAlgorithm a : algos) {
        forests.push_back(route(a, c.graph, c.gateways, c.traffic));
        check_forest_independently(c, forests.back(), rep, tag + " " + to_string(a));
    }

    // Rebuild the whole case from its seed and route again.
    const Case again = make_case(seed);
    bool same = again.gateways == c.gateways &&
                std::equal(again.graph.capacities().begin(), again.graph.capacities().end(),
                           c.graph.capacities().begin(), c.graph.capacities().end());
    for (std::size_t k = 0; k < 3 && same; ++k) {
        const RoutingForest f = route(algos[k], again.graph, again.gateways, again.traffic);
        same = f.next_hop == forests[k].next_hop && f.rate_bps == forests[k].rate_bps &&
               f.hops == forests[k].hops;
    }
    rep.determinism.record(same, tag);

    // Link capacity under a higher SNR, same small-scale draws.
    ChannelParams louder = c.channel;
    louder.snr_db += 3.0 + static_cast<double>(seed % 7);
    const auto base = sample_link_channels(c.graph, c.channel, c.channel_seed);
    const auto up = sample_link_channels(c.graph, louder, c.channel_seed);
    bool mono = base.size() == up.size();
    for (std::size_t e = 0; e < base.size() && mono; ++e)
        mono = up[e].capacity_bps >= base[e].capacity_bps && up[e].psi_db == base[e].psi_db;
    rep.snr_monotone.record(mono, tag);

    // Fixed placement: every forest on every epoch shares one denominator, so
    // ranking by efficiency and by capacity must pick the same winner.
    std::vector<EvaluationReport> reports;
    for (const RoutingForest& f : forests)
        reports.push_back(evaluate_forest(f, c.traffic, c.cost));
    LinkGraph other = c.graph;
    assign_capacities(other, c.channel, c.channel_seed ^ 0x9e3779b97f4a7c15ULL);
    for (RoutingAlgorithm a : algos)
        reports.push_back(evaluate_forest(route(a, other, c.gateways, c.traffic), c.traffic, c.cost));
    bool same_denominator = true;
    for (const auto& r : reports)
        same_denominator = same_denominator && r.cost_eur == reports[0].cost_eur;
    auto argmax = [&](auto key) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < reports.size(); ++i)
            if (key(reports[i]) > key(reports[best]))
                best = i;
        return best;
    };
    const std::size_t by_e = argmax([](const EvaluationReport& r) { return r.efficiency_bps_per_eur; });
    const std::size_t by_c = argmax([](const EvaluationReport& r) { return r.capacity_bps; });
    // Summation order can split capacities by an ulp that the division then
    // merges, so winners are compared by value rather than by index.
    const double tol = 1e-12;
    const bool agree =
        reports[by_e].capacity_bps >= reports[by_c].capacity_bps * (1 - tol) &&
        reports[by_c].efficiency_bps_per_eur >= reports[by_e].efficiency_bps_per_eur * (1 - tol);
    rep.argmax.record(same_denominator && agree, tag);
}

inline Report run(std::size_t cases, std::uint64_t master = 20240601)
{
    Report rep;
    for (std::size_t i = 0; i < cases; ++i)
        run_case(derive_seed(master, Stream::sweep, i), rep);
    return rep;
}

inline void print(std::ostream& out, const Report& rep)
{
    for (const Tally* t : rep.tallies()) {
        out << (t->violations == 0 ? "PASS " : "FAIL ") << t->name << ": " << t->violations
            << " violations in " << t->checks << " checks";
        if (t->violations)
            out << " (first: " << t->first_failure << ")";
        out << '\n';
    }
}

} // namespace property
