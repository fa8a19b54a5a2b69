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

#include "backhaul/gateway_opt.hpp"

#include "backhaul/csv.hpp"
#include "backhaul/errors.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace backhaul {

std::vector<NodeId> HopAssignment::unreachable_nodes() const
{
    std::vector<NodeId> out;
    for (NodeId v = 0; v < hop.size(); ++v)
        if (hop[v] == unreachable_hops)
            out.push_back(v);
    return out;
}

namespace {

struct Key {
    std::size_t unreachable = 0;
    std::size_t hop_sum = 0;
    auto operator<=>(const Key&) const = default;
};

// Reusable BFS buffers for repeated objective evaluations on one graph.
class HopEvaluator {
public:
    HopEvaluator(const LinkGraph& g, OpCounter* ops)
        : g_(g), ops_(ops), dist_(g.node_count()), scratch_(g.node_count()),
          stamp_(g.node_count(), 0)
    {
        queue_.reserve(g.node_count());
    }

    // Full multi-source BFS into dist_. Returns the objective.
    Key evaluate(std::span<const NodeId> gateways, std::vector<NodeId>* serving = nullptr)
    {
        std::fill(dist_.begin(), dist_.end(), unreachable_hops);
        queue_.clear();
        if (serving)
            serving->assign(g_.node_count(), 0);
        for (NodeId s : gateways) {
            if (s >= g_.node_count())
                throw std::invalid_argument("gateway index " + std::to_string(s) +
                                            " out of range");
            if (dist_[s] == 0)
                throw std::invalid_argument("duplicate gateway " + std::to_string(s));
            dist_[s] = 0;
            if (serving)
                (*serving)[s] = s;
            queue_.push_back(s);
        }
        std::uint64_t work = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const NodeId u = queue_[head];
            ++work;
            for (const Neighbor& nb : g_.neighbors(u)) {
                ++work;
                if (dist_[nb.node] == unreachable_hops) {
                    dist_[nb.node] = dist_[u] + 1;
                    if (serving)
                        (*serving)[nb.node] = (*serving)[u];
                    queue_.push_back(nb.node);
                }
            }
        }
        if (ops_)
            ops_->operations += work;
        Key k;
        for (std::size_t d : dist_) {
            if (d == unreachable_hops)
                ++k.unreachable;
            else
                k.hop_sum += d;
        }
        return k;
    }

    // Objective after adding `cand` to the set whose distances are `base`.
    // Only nodes whose hop count strictly improves are expanded.
    Key evaluate_added(std::span<const std::size_t> base, Key base_key, NodeId cand)
    {
        ++epoch_;
        Key k = base_key;
        auto improve = [&](NodeId v, std::size_t d) {
            if (base[v] == unreachable_hops) {
                --k.unreachable;
                k.hop_sum += d;
            } else {
                k.hop_sum -= base[v] - d;
            }
            stamp_[v] = epoch_;
            scratch_[v] = d;
        };
        queue_.clear();
        improve(cand, 0);
        queue_.push_back(cand);
        std::uint64_t work = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const NodeId u = queue_[head];
            const std::size_t du = scratch_[u];
            ++work;
            for (const Neighbor& nb : g_.neighbors(u)) {
                ++work;
                const NodeId v = nb.node;
                if (stamp_[v] == epoch_)
                    continue;
                if (du + 1 < base[v]) {
                    improve(v, du + 1);
                    queue_.push_back(v);
                }
            }
        }
        if (ops_)
            ops_->operations += work;
        return k;
    }

    const std::vector<std::size_t>& distances() const { return dist_; }

private:
    const LinkGraph& g_;
    OpCounter* ops_;
    std::vector<std::size_t> dist_;
    std::vector<std::size_t> scratch_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::vector<NodeId> queue_;
};

double mean_or_nan(std::size_t sum, std::size_t count)
{
    return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                      : static_cast<double>(sum) / static_cast<double>(count);
}

GatewaySelection finish_selection(const LinkGraph& graph, std::vector<NodeId> gateways,
                                  std::size_t greedy_hop_sum)
{
    HopEvaluator eval(graph, nullptr);
    GatewaySelection sel;
    const Key k = eval.evaluate(gateways, &sel.serving);
    sel.hop = eval.distances();
    sel.gateways = std::move(gateways);
    std::vector<bool> is_gw(graph.node_count(), false);
    for (NodeId g : sel.gateways)
        is_gw[g] = true;
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (!is_gw[v])
            sel.non_gateways.push_back(v);
    sel.no_non_gateways = sel.non_gateways.empty();
    sel.hop_sum = k.hop_sum;
    sel.greedy_hop_sum = greedy_hop_sum;
    sel.y_min = mean_or_nan(k.hop_sum, sel.non_gateways.size());
    sel.y_greedy = mean_or_nan(greedy_hop_sum, sel.non_gateways.size());
    return sel;
}

void check_gateway_count(const LinkGraph& graph, std::size_t m)
{
    if (m < 1)
        throw std::invalid_argument("gateway count must be at least 1");
    if (m > graph.node_count())
        throw std::invalid_argument("gateway count " + std::to_string(m) +
                                    " exceeds SBS count " + std::to_string(graph.node_count()));
}

void check_cluster_bound(const LinkGraph& graph, std::size_t m)
{
    const ClusterPartition clusters = form_clusters(graph);
    if (m < clusters.count()) {
        std::vector<NodeId> stranded;
        for (std::size_t c = m; c < clusters.count(); ++c)
            stranded.insert(stranded.end(), clusters.clusters[c].begin(),
                            clusters.clusters[c].end());
        throw InfeasibleError("need at least " + std::to_string(clusters.count()) +
                                  " gateways to cover every connection cluster, got " +
                                  std::to_string(m),
                              std::move(stranded));
    }
}

} // namespace

HopAssignment hop_assignment(const LinkGraph& graph, std::span<const NodeId> gateways,
                             OpCounter* ops)
{
    HopEvaluator eval(graph, ops);
    HopAssignment out;
    const Key k = eval.evaluate(gateways, &out.serving);
    out.hop = eval.distances();
    out.non_gateways = graph.node_count() - gateways.size();
    out.unreachable = k.unreachable;
    out.hop_sum = k.hop_sum;
    out.y_min = out.unreachable > 0 ? std::numeric_limits<double>::infinity()
                                    : mean_or_nan(k.hop_sum, out.non_gateways);
    return out;
}

HopAssignment know_gateway(const LinkGraph& graph, std::span<const NodeId> gateways)
{
    if (gateways.empty())
        throw std::invalid_argument("know_gateway: at least one gateway is required");
    HopAssignment out = hop_assignment(graph, gateways);
    if (out.unreachable > 0)
        throw InfeasibleError(std::to_string(out.unreachable) +
                                  " SBS(s) cannot reach any gateway",
                              out.unreachable_nodes());
    return out;
}

GatewaySelection unknow_gateway(const LinkGraph& graph, std::size_t m,
                                const GatewaySearchOptions& options)
{
    check_gateway_count(graph, m);
    check_cluster_bound(graph, m);
    const std::size_t n = graph.node_count();
    HopEvaluator eval(graph, options.ops);

    std::vector<NodeId> chosen;
    std::vector<bool> is_gw(n, false);
    std::vector<std::size_t> base(n, unreachable_hops);
    Key base_key{n, 0};

    // Greedy insertion.
    while (chosen.size() < m) {
        Key best{};
        NodeId best_node = n;
        for (NodeId i = 0; i < n; ++i) {
            if (is_gw[i])
                continue;
            const Key k = eval.evaluate_added(base, base_key, i);
            if (best_node == n || k < best) {
                best = k;
                best_node = i;
            }
        }
        chosen.push_back(best_node);
        is_gw[best_node] = true;
        base_key = eval.evaluate(chosen);
        base = eval.distances();
    }
    const std::size_t greedy_hop_sum = base_key.hop_sum;

    // Swap refinement: each gateway in turn may trade places with the
    // non-gateway SBS that most improves the objective.
    if (m > 1 && m < n) {
        for (std::size_t pass = 0; pass < options.swap_passes; ++pass) {
            bool changed = false;
            for (std::size_t pos = 0; pos < chosen.size(); ++pos) {
                const NodeId incumbent = chosen[pos];
                Key best = eval.evaluate(chosen);
                NodeId best_node = incumbent;
                for (NodeId i = 0; i < n; ++i) {
                    if (is_gw[i])
                        continue;
                    chosen[pos] = i;
                    const Key k = eval.evaluate(chosen);
                    if (k < best) {
                        best = k;
                        best_node = i;
                    }
                }
                chosen[pos] = best_node;
                if (best_node != incumbent) {
                    is_gw[incumbent] = false;
                    is_gw[best_node] = true;
                    changed = true;
                }
            }
            if (!changed)
                break;
        }
    }
    return finish_selection(graph, std::move(chosen), greedy_hop_sum);
}

GatewaySelection brute_force_gateways(const LinkGraph& graph, std::size_t m,
                                      std::uint64_t max_subsets)
{
    check_gateway_count(graph, m);
    const std::size_t n = graph.node_count();
    // C(n, m) with early exit once the guard is exceeded.
    std::uint64_t subsets = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        subsets = subsets * (n - m + k) / k;
        if (subsets > max_subsets)
            throw std::length_error("brute_force_gateways: C(" + std::to_string(n) + ", " +
                                    std::to_string(m) + ") exceeds the enumeration guard");
    }
    check_cluster_bound(graph, m);

    HopEvaluator eval(graph, nullptr);
    std::vector<NodeId> comb(m);
    std::iota(comb.begin(), comb.end(), NodeId{0});
    std::vector<NodeId> best_comb = comb;
    Key best = eval.evaluate(comb);
    while (true) {
        // Next combination in lexicographic order.
        std::size_t i = m;
        while (i > 0 && comb[i - 1] == n - m + i - 1)
            --i;
        if (i == 0)
            break;
        ++comb[i - 1];
        for (std::size_t j = i; j < m; ++j)
            comb[j] = comb[j - 1] + 1;
        const Key k = eval.evaluate(comb);
        if (k < best) {
            best = k;
            best_comb = comb;
        }
    }
    return finish_selection(graph, std::move(best_comb), best.hop_sum);
}

std::vector<std::size_t> allocate_gateways(std::span<const std::size_t> sizes, std::size_t m)
{
    const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (m < sizes.size())
        throw std::invalid_argument("allocate_gateways: fewer gateways than clusters");
    if (m > total)
        throw std::invalid_argument("allocate_gateways: more gateways than SBSs");
    std::vector<std::size_t> alloc(sizes.size(), 1);
    for (std::size_t handed = sizes.size(); handed < m; ++handed) {
        std::size_t pick = sizes.size();
        double best_deficit = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            if (alloc[c] >= sizes[c])
                continue;
            const double quota =
                static_cast<double>(m) * static_cast<double>(sizes[c]) / static_cast<double>(total);
            const double deficit = quota - static_cast<double>(alloc[c]);
            if (deficit > best_deficit) {
                best_deficit = deficit;
                pick = c;
            }
        }
        ++alloc[pick];
    }
    return alloc;
}

GatewaySelection place_gateways(const LinkGraph& graph, const ClusterPartition& clusters,
                                std::size_t m, const GatewaySearchOptions& options)
{
    check_gateway_count(graph, m);
    if (m < clusters.count())
        check_cluster_bound(graph, m);
    if (clusters.count() == 1)
        return unknow_gateway(graph, m, options);

    std::vector<std::size_t> sizes;
    for (const auto& c : clusters.clusters)
        sizes.push_back(c.size());
    const std::vector<std::size_t> alloc = allocate_gateways(sizes, m);

    std::vector<NodeId> gateways;
    std::size_t greedy_hop_sum = 0;
    std::vector<std::size_t> local(graph.node_count(), 0);
    for (std::size_t c = 0; c < clusters.count(); ++c) {
        const auto& members = clusters.clusters[c];
        for (std::size_t k = 0; k < members.size(); ++k)
            local[members[k]] = k;
        std::vector<Edge> edges;
        for (NodeId v : members)
            for (const Neighbor& nb : graph.neighbors(v))
                if (v < nb.node)
                    edges.push_back({local[v], local[nb.node], graph.edges()[nb.edge].length_m});
        const LinkGraph sub(members.size(), std::move(edges));
        const GatewaySelection part = unknow_gateway(sub, alloc[c], options);
        for (NodeId g : part.gateways)
            gateways.push_back(members[g]);
        greedy_hop_sum += part.greedy_hop_sum;
    }
    return finish_selection(graph, std::move(gateways), greedy_hop_sum);
}

const GatewayCountPoint& GatewayCountResult::best() const
{
    for (const auto& p : curve)
        if (p.m == m_opt)
            return p;
    throw std::logic_error("GatewayCountResult: no point for m_opt");
}

EvaluationReport evaluate_placement(const GatewaySelection& sel, std::size_t n_total,
                                    const ScenarioConfig& cfg)
{
    EvaluationReport r;
    r.m = sel.gateways.size();
    r.n = n_total - r.m;
    const auto& t = cfg.traffic;
    if (r.n == 0) {
        r.y = std::numeric_limits<double>::quiet_NaN();
        r.capacity_bps = std::min(static_cast<double>(r.m) * t.w_s_bps,
                                  static_cast<double>(r.m) * t.w_g_bps);
    } else {
        r.y = sel.y_min;
        r.capacity_bps =
            std::min(simplified_capacity(r.n, t.w_max_bps, r.y, r.m, t.w_s_bps),
                     static_cast<double>(r.m) * t.w_g_bps);
    }
    price_report(r, cfg.cost, t.w_g_bps, t.w_bar_bps);
    r.routed_load_operation_kwh = r.operation_kwh;
    return r;
}

GatewayCountResult optimize_gateway_count(const Deployment& dep, const LinkGraph& graph,
                                          const ScenarioConfig& cfg,
                                          const GatewaySearchOptions& options)
{
    const std::size_t n = graph.node_count();
    if (cfg.max_m > n)
        throw ConfigError("max_m (" + std::to_string(cfg.max_m) + ") exceeds the SBS count (" +
                          std::to_string(n) + ")");
    const ClusterPartition clusters = form_clusters(graph);

    GatewayCountResult result;
    double best_e = -1.0;
    for (std::size_t m = 1; m <= cfg.max_m; ++m) {
        GatewayCountPoint point;
        point.m = m;
        point.feasible = m >= clusters.count();
        if (point.feasible) {
            point.selection = place_gateways(graph, clusters, m, options);
            point.report = evaluate_placement(point.selection, n, cfg);
            if (point.report.efficiency_bps_per_eur > best_e) {
                best_e = point.report.efficiency_bps_per_eur;
                result.m_opt = m;
                result.gateways = point.selection.gateways;
            }
        }
        result.curve.push_back(std::move(point));
    }
    if (result.m_opt == 0) {
        std::vector<NodeId> all(n);
        std::iota(all.begin(), all.end(), NodeId{0});
        throw InfeasibleError("max_m (" + std::to_string(cfg.max_m) +
                                  ") is below the connection-cluster count (" +
                                  std::to_string(clusters.count()) + ")",
                              std::move(all));
    }
    for (NodeId g : result.gateways)
        result.gateway_positions.push_back(dep.positions.at(g));
    return result;
}

void write_gateway_curve_csv(std::ostream& out, const GatewayCountResult& result)
{
    CsvWriter csv(out);
    csv.header({"M", "Y", "capacity_bps", "energy_kwh", "cost_eur", "efficiency_mbps_per_eur",
                "feasible"});
    for (const auto& p : result.curve) {
        const auto& r = p.report;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        csv.row(p.m, p.feasible ? r.y : nan, p.feasible ? r.capacity_bps : nan,
                p.feasible ? r.operation_kwh + r.embodied_kwh : nan, p.feasible ? r.cost_eur : nan,
                p.feasible ? to_mbps_per_eur(r.efficiency_bps_per_eur) : nan, p.feasible);
    }
}

void write_gateway_positions_csv(std::ostream& out, const GatewayCountResult& result)
{
    CsvWriter csv(out);
    csv.header({"node_id", "x_m", "y_m"});
    for (std::size_t k = 0; k < result.gateways.size(); ++k)
        csv.row(result.gateways[k], result.gateway_positions[k].x_m,
                result.gateway_positions[k].y_m);
}

} // namespace backhaul
