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

#include "backhaul/routing.hpp"

#include "backhaul/csv.hpp"
#include "backhaul/errors.hpp"
#include "backhaul/gateway_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace backhaul {

const char* to_string(RoutingAlgorithm a)
{
    switch (a) {
    case RoutingAlgorithm::mcst: return "mcst";
    case RoutingAlgorithm::sp: return "sp";
    case RoutingAlgorithm::bf: return "bf";
    }
    return "?";
}

RoutingAlgorithm parse_routing_algorithm(std::string_view name)
{
    if (name == "mcst")
        return RoutingAlgorithm::mcst;
    if (name == "sp")
        return RoutingAlgorithm::sp;
    if (name == "bf")
        return RoutingAlgorithm::bf;
    throw std::invalid_argument("unknown routing algorithm '" + std::string(name) + "'");
}

std::vector<NodeId> RoutingForest::non_gateways() const
{
    std::vector<NodeId> out;
    for (NodeId v = 0; v < is_gateway.size(); ++v)
        if (!is_gateway[v])
            out.push_back(v);
    return out;
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

RoutingForest init_forest(const LinkGraph& graph, std::span<const NodeId> gateways)
{
    if (!graph.has_capacities())
        throw std::invalid_argument("routing requires sampled link capacities");
    // Also validates the gateway indices and reports stranded SBSs.
    know_gateway(graph, gateways);

    const std::size_t n = graph.node_count();
    RoutingForest f;
    f.gateways.assign(gateways.begin(), gateways.end());
    f.is_gateway.assign(n, false);
    f.next_hop.assign(n, 0);
    f.hops.assign(n, 0);
    f.rate_bps.assign(n, 0.0);
    f.gateway_of.assign(n, 0);
    f.gateway_load_bps.assign(gateways.size(), 0.0);
    f.edge_load_bps.assign(graph.edges().size(), 0.0);
    for (NodeId g : gateways) {
        f.is_gateway[g] = true;
        f.next_hop[g] = g;
        f.gateway_of[g] = g;
    }
    return f;
}

std::vector<std::size_t> gateway_slots(const RoutingForest& f)
{
    std::vector<std::size_t> slot(f.node_count(), 0);
    for (std::size_t k = 0; k < f.gateways.size(); ++k)
        slot[f.gateways[k]] = k;
    return slot;
}

double gateway_residual(const RoutingForest& f, std::size_t slot, const TrafficParams& t)
{
    return std::max(0.0, t.w_g_bps - f.gateway_load_bps[slot] - t.w_s_bps);
}

// Assigns rates along a fixed parent structure, visiting SBSs in `order`.
void assign_rates(const LinkGraph& graph, RoutingForest& f, const std::vector<NodeId>& order,
                  const std::vector<std::size_t>& parent_edge, const TrafficParams& t)
{
    const auto slot = gateway_slots(f);
    for (NodeId v : order) {
        double w = t.w_max_bps;
        for (NodeId u = v; !f.is_gateway[u]; u = f.next_hop[u]) {
            const std::size_t e = parent_edge[u];
            w = std::min(w, graph.capacity(e) - f.edge_load_bps[e]);
        }
        w = std::min(w, gateway_residual(f, slot[f.gateway_of[v]], t));
        w = std::max(w, 0.0);
        for (NodeId u = v; !f.is_gateway[u]; u = f.next_hop[u])
            f.edge_load_bps[parent_edge[u]] += w;
        f.gateway_load_bps[slot[f.gateway_of[v]]] += w;
        f.rate_bps[v] = w;
        f.attach_order.push_back(v);
        f.tree_edges.push_back(parent_edge[v]);
        if (w <= 0.0)
            f.starved.push_back(v);
    }
}

// Path label compared lexicographically; `parent` breaks the final tie.
struct Label {
    double primary_len = inf;
    std::size_t hops = std::numeric_limits<std::size_t>::max();
    NodeId parent = std::numeric_limits<NodeId>::max();
};

} // namespace

RoutingForest mcst(const LinkGraph& graph, std::span<const NodeId> gateways,
                   const TrafficParams& t)
{
    RoutingForest f = init_forest(graph, gateways);
    const std::size_t n = graph.node_count();
    const auto slot = gateway_slots(f);

    std::vector<bool> in_tree(f.is_gateway);
    std::vector<std::size_t> parent_edge(n, LinkGraph::npos);
    std::vector<double> path_res(n, inf);
    std::vector<NodeId> members(gateways.begin(), gateways.end());
    const std::size_t target = n - gateways.size();

    double sum_w = 0.0;
    std::size_t sum_hop = 0;
    for (std::size_t k = 0; k < target; ++k) {
        double best_metric = -1.0;
        double best_w = -1.0;
        NodeId best_v = n;
        NodeId best_j = n;
        std::size_t best_e = LinkGraph::npos;
        const double kk = static_cast<double>(k + 1);
        for (NodeId j : members) {
            const double gw_res = gateway_residual(f, slot[f.gateway_of[j]], t);
            const double reach = std::min({t.w_max_bps, path_res[j], gw_res});
            const double denom = static_cast<double>(sum_hop + f.hops[j] + 1);
            for (const Neighbor& nb : graph.neighbors(j)) {
                const NodeId v = nb.node;
                if (in_tree[v])
                    continue;
                const double w = std::max(0.0, std::min(reach, graph.capacity(nb.edge)));
                const double metric = kk * (sum_w + w) / denom;
                const bool better =
                    metric > best_metric ||
                    (metric == best_metric &&
                     (w > best_w || (w == best_w && (v < best_v || (v == best_v && j < best_j)))));
                if (better) {
                    best_metric = metric;
                    best_w = w;
                    best_v = v;
                    best_j = j;
                    best_e = nb.edge;
                }
            }
        }
        // init_forest guarantees reachability, so a frontier edge always exists.
        const NodeId v = best_v;
        in_tree[v] = true;
        members.push_back(v);
        f.next_hop[v] = best_j;
        f.hops[v] = f.hops[best_j] + 1;
        f.gateway_of[v] = f.gateway_of[best_j];
        parent_edge[v] = best_e;
        f.rate_bps[v] = best_w;
        f.attach_order.push_back(v);
        f.tree_edges.push_back(best_e);
        if (best_w <= 0.0)
            f.starved.push_back(v);
        for (NodeId u = v; !f.is_gateway[u]; u = f.next_hop[u])
            f.edge_load_bps[parent_edge[u]] += best_w;
        f.gateway_load_bps[slot[f.gateway_of[v]]] += best_w;
        sum_w += best_w;
        sum_hop += f.hops[v];

        // Parents precede children in `members`, so one forward sweep refreshes
        // every root-path bottleneck.
        for (NodeId u : members) {
            if (f.is_gateway[u])
                continue;
            const std::size_t e = parent_edge[u];
            path_res[u] = std::min(path_res[f.next_hop[u]], graph.capacity(e) - f.edge_load_bps[e]);
        }
    }
    return f;
}

RoutingForest sp_routing(const LinkGraph& graph, std::span<const NodeId> gateways,
                         const TrafficParams& t)
{
    RoutingForest f = init_forest(graph, gateways);
    const std::size_t n = graph.node_count();
    std::vector<Label> label(n);
    std::vector<std::size_t> parent_edge(n, LinkGraph::npos);
    std::vector<bool> settled(n, false);

    using Item = std::tuple<double, std::size_t, NodeId, NodeId>;  // len, hops, parent, node
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (NodeId g : gateways) {
        label[g] = {0.0, 0, g};
        pq.emplace(0.0, 0, g, g);
    }
    while (!pq.empty()) {
        const auto [len, hops, parent, u] = pq.top();
        pq.pop();
        if (settled[u] || std::tie(len, hops, parent) !=
                              std::tie(label[u].primary_len, label[u].hops, label[u].parent))
            continue;
        settled[u] = true;
        for (const Neighbor& nb : graph.neighbors(u)) {
            const NodeId v = nb.node;
            if (settled[v])
                continue;
            const Label cand{len + graph.edges()[nb.edge].length_m, hops + 1, u};
            if (std::tie(cand.primary_len, cand.hops, cand.parent) <
                std::tie(label[v].primary_len, label[v].hops, label[v].parent)) {
                label[v] = cand;
                parent_edge[v] = nb.edge;
                pq.emplace(cand.primary_len, cand.hops, u, v);
            }
        }
    }

    std::vector<NodeId> order;
    for (NodeId v = 0; v < n; ++v) {
        if (f.is_gateway[v])
            continue;
        f.next_hop[v] = label[v].parent;
        f.hops[v] = label[v].hops;
        order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return std::tie(label[a].primary_len, label[a].hops, a) <
               std::tie(label[b].primary_len, label[b].hops, b);
    });
    // Settling order puts parents first, so roots resolve in one sweep.
    for (NodeId v : order)
        f.gateway_of[v] = f.gateway_of[f.next_hop[v]];
    assign_rates(graph, f, order, parent_edge, t);
    return f;
}

RoutingForest bf_routing(const LinkGraph& graph, std::span<const NodeId> gateways,
                         const TrafficParams& t)
{
    RoutingForest f = init_forest(graph, gateways);
    const std::size_t n = graph.node_count();
    // Here primary_len holds the Euclidean length as the secondary key.
    std::vector<Label> label(n);
    std::vector<std::size_t> parent_edge(n, LinkGraph::npos);
    for (NodeId g : gateways)
        label[g] = {0.0, 0, g};

    auto key = [](const Label& l) { return std::tie(l.hops, l.primary_len, l.parent); };
    std::size_t rounds = 0;
    while (true) {
        std::vector<Label> next = label;
        std::vector<std::size_t> next_edge = parent_edge;
        bool changed = false;
        for (NodeId v = 0; v < n; ++v) {
            if (f.is_gateway[v])
                continue;
            for (const Neighbor& nb : graph.neighbors(v)) {
                const Label& lu = label[nb.node];
                if (lu.hops == std::numeric_limits<std::size_t>::max())
                    continue;
                const Label cand{lu.primary_len + graph.edges()[nb.edge].length_m, lu.hops + 1,
                                 nb.node};
                if (key(cand) < key(next[v])) {
                    next[v] = cand;
                    next_edge[v] = nb.edge;
                    changed = true;
                }
            }
        }
        if (!changed)
            break;
        label = std::move(next);
        parent_edge = std::move(next_edge);
        ++rounds;
    }
    f.relaxation_rounds = rounds;

    std::vector<NodeId> order;
    for (NodeId v = 0; v < n; ++v) {
        if (f.is_gateway[v])
            continue;
        f.next_hop[v] = label[v].parent;
        f.hops[v] = label[v].hops;
        order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return std::tie(label[a].hops, label[a].primary_len, a) <
               std::tie(label[b].hops, label[b].primary_len, b);
    });
    for (NodeId v : order)
        f.gateway_of[v] = f.gateway_of[f.next_hop[v]];
    assign_rates(graph, f, order, parent_edge, t);
    return f;
}

RoutingForest route(RoutingAlgorithm algo, const LinkGraph& graph,
                    std::span<const NodeId> gateways, const TrafficParams& traffic)
{
    switch (algo) {
    case RoutingAlgorithm::mcst: return mcst(graph, gateways, traffic);
    case RoutingAlgorithm::sp: return sp_routing(graph, gateways, traffic);
    case RoutingAlgorithm::bf: return bf_routing(graph, gateways, traffic);
    }
    throw std::invalid_argument("unknown routing algorithm");
}

EvaluationReport evaluate_forest(const RoutingForest& forest, const TrafficParams& t,
                                 const CostParams& cost)
{
    EvaluationReport r;
    r.m = forest.gateways.size();
    r.n = forest.node_count() - r.m;
    const double mm = static_cast<double>(r.m);
    std::vector<double> rates;
    std::vector<std::size_t> hops;
    for (NodeId v = 0; v < forest.node_count(); ++v) {
        if (forest.is_gateway[v])
            continue;
        rates.push_back(forest.rate_bps[v]);
        hops.push_back(forest.hops[v]);
    }
    if (r.n == 0) {
        r.y = std::numeric_limits<double>::quiet_NaN();
        r.capacity_bps = std::min(mm * t.w_s_bps, mm * t.w_g_bps);
    } else {
        r.y = average_hops(hops);
        r.capacity_bps = std::min(weighted_capacity(rates, hops) + mm * t.w_s_bps, mm * t.w_g_bps);
    }
    price_report(r, cost, t.w_g_bps, t.w_bar_bps);

    const EnergyBreakdown gw = operation_energy_breakdown(r.m, 0, cost, t.w_g_bps, 0.0);
    double sbs_w = 0.0;
    for (double w : rates)
        sbs_w += cost.power_a * cost.p_norm_w * w / cost.w0_bps + cost.power_b_w;
    r.routed_load_operation_kwh = (gw.gateway_power_w + sbs_w) * cost.lifetime_h / 1000.0;
    return r;
}

ForestCheck check_forest(const LinkGraph& graph, const RoutingForest& f, const TrafficParams& t)
{
    ForestCheck out;
    auto fail = [&](std::string msg) { out.violations.push_back(std::move(msg)); };
    const std::size_t n = graph.node_count();
    if (f.node_count() != n || f.is_gateway.size() != n || f.hops.size() != n ||
        f.rate_bps.size() != n || f.gateway_of.size() != n) {
        fail("forest arrays do not match the node count");
        return out;
    }
    std::vector<bool> gw(n, false);
    for (NodeId g : f.gateways) {
        if (g >= n) {
            fail("gateway index out of range");
            return out;
        }
        gw[g] = true;
    }
    if (gw != f.is_gateway)
        fail("is_gateway disagrees with the gateway list");

    std::vector<double> edge_load(graph.edges().size(), 0.0);
    std::vector<double> gw_load(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        if (gw[v]) {
            if (f.next_hop[v] != v || f.hops[v] != 0)
                fail("gateway " + std::to_string(v) + " is not a root");
            continue;
        }
        if (f.rate_bps[v] < 0.0 || !std::isfinite(f.rate_bps[v]))
            fail("SBS " + std::to_string(v) + " has an invalid rate");
        // Walk to the root; more than n steps means a cycle.
        std::size_t steps = 0;
        NodeId u = v;
        bool broken = false;
        while (!gw[u]) {
            const NodeId p = f.next_hop[u];
            const std::size_t e = p < n ? graph.find_edge(u, p) : LinkGraph::npos;
            if (e == LinkGraph::npos) {
                fail("SBS " + std::to_string(u) + " forwards over a non-link");
                broken = true;
                break;
            }
            if (f.hops[u] != f.hops[p] + 1)
                fail("hop count of SBS " + std::to_string(u) + " is inconsistent");
            edge_load[e] += f.rate_bps[v];
            u = p;
            if (++steps > n) {
                fail("cycle through SBS " + std::to_string(v));
                broken = true;
                break;
            }
        }
        if (broken)
            continue;
        if (f.gateway_of[v] != u)
            fail("SBS " + std::to_string(v) + " reports the wrong gateway");
        gw_load[u] += f.rate_bps[v];
    }
    for (std::size_t e = 0; e < edge_load.size(); ++e) {
        const double c = graph.capacity(e);
        if (edge_load[e] > c * (1.0 + 1e-9) + 1e-9)
            fail("edge " + std::to_string(e) + " carries more than its capacity");
    }
    for (NodeId g : f.gateways)
        if (gw_load[g] + t.w_s_bps > t.w_g_bps * (1.0 + 1e-9) && gw_load[g] > 0.0)
            fail("gateway " + std::to_string(g) + " exceeds W_G");
    for (NodeId v = 0; v < n; ++v)
        if (!gw[v] && f.rate_bps[v] > t.w_max_bps * (1.0 + 1e-12))
            fail("SBS " + std::to_string(v) + " exceeds W_max");
    return out;
}

void write_forest_csv(std::ostream& out, const RoutingForest& f)
{
    CsvWriter csv(out);
    csv.header({"node_id", "next_hop", "hops", "rate_bps", "gateway_id"});
    for (NodeId v = 0; v < f.node_count(); ++v)
        csv.row(v, f.next_hop[v], f.hops[v], f.rate_bps[v], f.gateway_of[v]);
}

} // namespace backhaul
