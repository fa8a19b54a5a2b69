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

#include "backhaul/channel.hpp"
#include "backhaul/clustering.hpp"
#include "backhaul/errors.hpp"
#include "backhaul/gateway_opt.hpp"
#include "backhaul/routing.hpp"

#include "oracles/oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace backhaul;

namespace {

TrafficParams traffic(double w_max = 2e9, double w_s = 1e9, double w_g = 100e9)
{
    TrafficParams t;
    t.w_max_bps = w_max;
    t.w_s_bps = w_s;
    t.w_g_bps = w_g;
    return t;
}

double path_length(const LinkGraph& g, const RoutingForest& f, NodeId v)
{
    double len = 0;
    for (NodeId u = v; !f.is_gateway[u]; u = f.next_hop[u])
        len += g.edges()[g.find_edge(u, f.next_hop[u])].length_m;
    return len;
}

// Graph with table-default channel draws on every edge.
LinkGraph sampled_graph(std::size_t n, std::uint64_t seed, Deployment* dep = nullptr)
{
    LinkGraph g = fixture::connected_random_graph(n, 500, 200, seed, dep);
    ScenarioConfig cfg;
    assign_capacities(g, channel_for_snr(cfg, cfg.snr_db), derive_seed(seed, Stream::channel));
    return g;
}

const RoutingAlgorithm all_algos[] = {RoutingAlgorithm::mcst, RoutingAlgorithm::sp,
                                      RoutingAlgorithm::bf};

} // namespace

TEST_CASE("algorithm names")
{
    for (RoutingAlgorithm a : all_algos)
        CHECK(parse_routing_algorithm(to_string(a)) == a);
    CHECK_THROWS_AS(parse_routing_algorithm("ospf"), std::invalid_argument);
}

TEST_CASE("two SBSs next to one gateway")
{
    LinkGraph g = fixture::star_graph(2);
    g.set_capacities({5e9, 5e9});
    const std::vector<NodeId> gw{0};
    const TrafficParams t = traffic(2e9, 0, 100e9);
    const RoutingForest f = mcst(g, gw, t);
    CHECK(f.hops == std::vector<std::size_t>{0, 1, 1});
    CHECK(f.rate_bps[1] == 2e9);
    CHECK(f.rate_bps[2] == 2e9);
    CHECK(evaluate_forest(f, t, CostParams{}).capacity_bps == doctest::Approx(4e9));
}

TEST_CASE("forest capacity is bounded by the exhaustive optimum")
{
    double worst_gap = 0;
    std::size_t exact = 0, cases = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 5 + seed % 3;
        LinkGraph g = fixture::connected_random_graph(n, 300, 250, seed);
        fixture::random_capacities(g, 0.5e9, 4e9, seed);
        const std::vector<NodeId> gw{0};
        const TrafficParams t = traffic(1.5e9, 1e9, 6e9);
        const auto best = oracle::exhaustive_forest_capacity(g, gw, t);
        REQUIRE(best.forests > 0);
        const RoutingForest f = mcst(g, gw, t);
        CHECK(check_forest(g, f, t).ok());
        const double c = evaluate_forest(f, t, CostParams{}).capacity_bps;
        CHECK(c <= best.best_capacity * (1 + 1e-9));
        const double gap = (best.best_capacity - c) / best.best_capacity;
        worst_gap = std::max(worst_gap, gap);
        exact += gap < 1e-9;
        ++cases;
    }
    MESSAGE("greedy forest optimal on " << exact << "/" << cases << ", worst gap " << worst_gap);
}

TEST_CASE("hand-set five-node instance")
{
    // Gateway 0; 1 and 2 are direct neighbours, 3 hangs off 1 and 2, 4 off 3.
    LinkGraph g(5, {{0, 1, 100}, {0, 2, 100}, {1, 3, 100}, {2, 3, 100}, {3, 4, 100}});
    g.set_capacities({3e9, 8e9, 3e9, 8e9, 4e9});
    const std::vector<NodeId> gw{0};
    const TrafficParams t = traffic(2e9, 0, 100e9);
    const RoutingForest f = mcst(g, gw, t);
    const auto best = oracle::exhaustive_forest_capacity(g, gw, t);
    CHECK(check_forest(g, f, t).ok());
    // Routing 3 and 4 through the wide 0-2 branch carries every demand.
    CHECK(f.next_hop[3] == 2);
    CHECK(evaluate_forest(f, t, CostParams{}).capacity_bps ==
          doctest::Approx(best.best_capacity));
}

TEST_CASE("distance-minimal routes can take more hops")
{
    const Deployment dep =
        fixture::points({{-330, 0}, {-220, 0}, {-110, 0}, {0, 0}, {190, 0}, {380, 0}});
    LinkGraph g = build_link_graph(dep, 200);
    fixture::random_capacities(g, 10e9, 10e9, 1);
    const std::vector<NodeId> gw{0, 5};
    const TrafficParams t = traffic();
    const RoutingForest sp = sp_routing(g, gw, t);
    const RoutingForest bf = bf_routing(g, gw, t);
    CHECK(sp.hops[3] == 3);
    CHECK(sp.gateway_of[3] == 0);
    CHECK(bf.hops[3] == 2);
    CHECK(bf.gateway_of[3] == 5);
    CHECK(evaluate_forest(sp, t, {}).y > evaluate_forest(bf, t, {}).y);
}

TEST_CASE("equal edge lengths make both baselines coincide")
{
    // 5 x 5 grid with unit edges.
    std::vector<Edge> edges;
    auto id = [](std::size_t r, std::size_t c) { return r * 5 + c; };
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) {
            if (c + 1 < 5)
                edges.push_back({id(r, c), id(r, c + 1), 1.0});
            if (r + 1 < 5)
                edges.push_back({id(r, c), id(r + 1, c), 1.0});
        }
    LinkGraph g(25, std::move(edges));
    fixture::random_capacities(g, 1e9, 9e9, 4);
    const std::vector<NodeId> gw{0, 24};
    const RoutingForest sp = sp_routing(g, gw, traffic());
    const RoutingForest bf = bf_routing(g, gw, traffic());
    CHECK(sp.next_hop == bf.next_hop);
    CHECK(sp.hops == bf.hops);
    CHECK(sp.rate_bps == bf.rate_bps);
}

TEST_CASE("shortest-path lengths match Floyd-Warshall")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const LinkGraph g = sampled_graph(40, seed);
        const auto d = oracle::all_pairs_lengths(g);
        const std::vector<NodeId> gw{0, 17};
        const RoutingForest f = sp_routing(g, gw, traffic());
        for (NodeId v = 0; v < 40; ++v) {
            const double best = std::min(d[0][v], d[17][v]);
            CHECK(path_length(g, f, v) == doctest::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("minimum-hop routes equal BFS distances")
{
    LinkGraph path = fixture::path_graph(7);
    fixture::random_capacities(path, 5e9, 5e9, 0);
    const std::vector<NodeId> end{0};
    CHECK(bf_routing(path, end, traffic()).hops == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const LinkGraph g = sampled_graph(60, seed);
        const std::vector<NodeId> gw{3, 30};
        const RoutingForest bf = bf_routing(g, gw, traffic());
        const RoutingForest sp = sp_routing(g, gw, traffic());
        CHECK(bf.hops == hop_assignment(g, gw).hop);
        CHECK(bf.relaxation_rounds <= 59);
        CHECK(bf.relaxation_rounds >= *std::max_element(bf.hops.begin(), bf.hops.end()));
        CHECK(evaluate_forest(bf, traffic(), {}).y <= evaluate_forest(sp, traffic(), {}).y);
    }
}

TEST_CASE("every algorithm yields a feasible spanning forest")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const LinkGraph g = sampled_graph(80, 100 + seed);
        const GatewaySelection sel = unknow_gateway(g, 1 + seed % 5);
        for (RoutingAlgorithm a : all_algos) {
            const TrafficParams t = traffic(10e9, 1e9, seed % 2 ? 100e9 : 20e9);
            const RoutingForest f = route(a, g, sel.gateways, t);
            const ForestCheck c = check_forest(g, f, t);
            CAPTURE(to_string(a));
            CHECK(c.ok());
            CHECK(f.tree_edges.size() == 80 - sel.gateways.size());
            CHECK(f.attach_order.size() == 80 - sel.gateways.size());
            double load = 0;
            for (double x : f.gateway_load_bps)
                load += x;
            double rate = 0;
            for (double x : f.rate_bps)
                rate += x;
            CHECK(load == doctest::Approx(rate));
        }
    }
}

TEST_CASE("routing is deterministic")
{
    const LinkGraph g = sampled_graph(70, 9);
    const std::vector<NodeId> gw{1, 2, 40};
    for (RoutingAlgorithm a : all_algos) {
        const RoutingForest x = route(a, g, gw, traffic());
        const RoutingForest y = route(a, g, gw, traffic());
        CHECK(x.next_hop == y.next_hop);
        CHECK(x.rate_bps == y.rate_bps);
    }
}

TEST_CASE("routing preconditions")
{
    LinkGraph g(3, {{0, 1, 10.0}});
    const std::vector<NodeId> gw{0};
    CHECK_THROWS_AS(mcst(g, gw, traffic()), std::invalid_argument);
    g.set_capacities({1e9});
    try {
        mcst(g, gw, traffic());
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.nodes() == std::vector<std::size_t>{2});
    }
    CHECK_THROWS_AS(sp_routing(g, gw, traffic()), InfeasibleError);
    CHECK_THROWS_AS(bf_routing(g, gw, traffic()), InfeasibleError);
}

TEST_CASE("dead links leave SBSs attached with zero rate")
{
    LinkGraph g = fixture::path_graph(3);
    g.set_capacities({4e9, 0.0});
    const std::vector<NodeId> gw{0};
    for (RoutingAlgorithm a : all_algos) {
        const RoutingForest f = route(a, g, gw, traffic());
        CHECK(f.hops[2] == 2);
        CHECK(f.rate_bps[2] == 0.0);
        CHECK(f.starved == std::vector<NodeId>{2});
        CHECK(check_forest(g, f, traffic()).ok());
    }
}

TEST_CASE("gateway ceiling limits the admitted rate")
{
    LinkGraph g = fixture::star_graph(6);
    fixture::random_capacities(g, 50e9, 50e9, 0);
    const std::vector<NodeId> gw{0};
    const TrafficParams t = traffic(10e9, 4e9, 30e9);
    for (RoutingAlgorithm a : all_algos) {
        const RoutingForest f = route(a, g, gw, t);
        CHECK(f.gateway_load_bps[0] == doctest::Approx(26e9));
        CHECK(check_forest(g, f, t).ok());
    }
}

TEST_CASE("the checker catches broken forests")
{
    LinkGraph g = fixture::path_graph(4);
    fixture::random_capacities(g, 3e9, 3e9, 0);
    const std::vector<NodeId> gw{0};
    const TrafficParams t = traffic();
    const RoutingForest good = mcst(g, gw, t);
    REQUIRE(check_forest(g, good, t).ok());

    RoutingForest cycle = good;
    cycle.next_hop[1] = 2;
    cycle.next_hop[2] = 1;
    CHECK_FALSE(check_forest(g, cycle, t).ok());

    RoutingForest overload = good;
    overload.rate_bps[3] += 5e9;
    overload.edge_load_bps[0] += 5e9;
    CHECK_FALSE(check_forest(g, overload, t).ok());

    RoutingForest hops = good;
    hops.hops[3] = 7;
    CHECK_FALSE(check_forest(g, hops, t).ok());

    RoutingForest ghost = good;
    ghost.next_hop[3] = 0;
    CHECK_FALSE(check_forest(g, ghost, t).ok());
}

TEST_CASE("single-hop forest capacity")
{
    LinkGraph g = fixture::star_graph(8);
    fixture::random_capacities(g, 20e9, 20e9, 0);
    const std::vector<NodeId> gw{0};
    const TrafficParams t = traffic(5e9, 2e9, 100e9);
    const EvaluationReport r = evaluate_forest(mcst(g, gw, t), t, CostParams{});
    CHECK(r.y == 1.0);
    CHECK(r.m == 1);
    CHECK(r.n == 8);
    CHECK(r.capacity_bps == doctest::Approx(8 * 5e9 + 2e9));
    CHECK(r.per_gateway_bps == doctest::Approx(r.capacity_bps));
    CHECK(r.routed_load_operation_kwh ==
          doctest::Approx(operation_energy(1, 8, CostParams{}, 100e9, 5e9)));
}

TEST_CASE("forest CSV layout")
{
    LinkGraph g = fixture::path_graph(2);
    g.set_capacities({1e9});
    const std::vector<NodeId> gw{0};
    std::ostringstream out;
    write_forest_csv(out, mcst(g, gw, traffic()));
    CHECK(out.str() == "node_id,next_hop,hops,rate_bps,gateway_id\n0,0,0,0,0\n1,0,1,1e+09,0\n");
}
