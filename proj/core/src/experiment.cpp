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

#include "backhaul/experiment.hpp"

#include "backhaul/channel.hpp"
#include "backhaul/clustering.hpp"
#include "backhaul/csv.hpp"
#include "backhaul/errors.hpp"
#include "backhaul/gateway_opt.hpp"
#include "backhaul/parallel.hpp"
#include "backhaul/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

namespace backhaul {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t max_deploy_attempts = 1000;

struct TagName {
    SweepTag tag;
    const char* name;
};
constexpr TagName tag_names[] = {
    {SweepTag::fig4, "fig4"},   {SweepTag::fig6, "fig6"},   {SweepTag::fig7, "fig7"},
    {SweepTag::fig8, "fig8"},   {SweepTag::fig9, "fig9"},   {SweepTag::fig10, "fig10"},
    {SweepTag::fig11, "fig11"},
};

std::vector<double> range(double first, double last, double step)
{
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9));
    for (long k = 0; k <= count; ++k)
        out.push_back(first + static_cast<double>(k) * step);
    return out;
}

std::vector<std::size_t> to_counts(const std::vector<double>& grid)
{
    std::vector<std::size_t> out;
    for (double g : grid)
        out.push_back(static_cast<std::size_t>(std::llround(g)));
    return out;
}

} // namespace

const char* to_string(SweepTag tag)
{
    for (const auto& t : tag_names)
        if (t.tag == tag)
            return t.name;
    return "?";
}

SweepTag parse_sweep_tag(std::string_view name)
{
    for (const auto& t : tag_names)
        if (name == t.name)
            return t.tag;
    throw ConfigError("unknown sweep tag '" + std::string(name) +
                      "' (expected fig4, fig6, fig7, fig8, fig9, fig10 or fig11)");
}

SweepSpec default_sweep_spec(SweepTag tag, const ScenarioConfig& cfg)
{
    SweepSpec s;
    s.tag = tag;
    s.replications = cfg.replications;
    switch (tag) {
    case SweepTag::fig4:
        s.variable = "expected_sbs";
        s.grid = range(20, 200, 10);
        s.replications = 1;
        break;
    case SweepTag::fig6:
        s.variable = "n_sbs";
        s.grid = range(50, 400, 50);
        break;
    case SweepTag::fig7:
        s.variable = "w_g_bps";
        s.grid = range(20e9, 200e9, 20e9);
        break;
    case SweepTag::fig8:
    case SweepTag::fig10:
    case SweepTag::fig11:
        s.variable = "snr_db";
        s.grid = range(-10, 30, 5);
        break;
    case SweepTag::fig9:
        s.variable = "M";
        s.grid = range(1, static_cast<double>(cfg.max_m), 1);
        break;
    }
    return s;
}

void validate(const SweepSpec& spec)
{
    if (spec.grid.empty())
        throw ConfigError("sweep grid is empty");
    if (spec.replications < 1)
        throw ConfigError("sweep needs at least one replication");
    for (double g : spec.grid)
        if (!std::isfinite(g))
            throw ConfigError("sweep grid contains a non-finite value");
}

EpochSchedule schedule_from(const ScenarioConfig& cfg)
{
    EpochSchedule s{cfg.epochs, cfg.reopt_period};
    if (s.epochs < 1 || s.reopt_period < 1)
        throw ConfigError("epochs and reopt_period must be at least 1");
    return s;
}

TwoScaleResult run_two_scale(const ScenarioConfig& cfg)
{
    validate(cfg);
    const EpochSchedule schedule = schedule_from(cfg);
    TwoScaleResult out;
    out.deployment = sample_scenario(cfg, derive_seed(cfg.seed, Stream::deployment));
    if (out.deployment.size() == 0)
        throw InfeasibleError("the deployment contains no SBS", {});
    const LinkGraph graph = build_link_graph(out.deployment, cfg.d0_m);
    out.clusters = form_clusters(graph).count();
    const ChannelParams channel = channel_for_snr(cfg, cfg.snr_db);
    const GatewaySearchOptions opts{cfg.swap_passes, nullptr};

    GatewayCountResult placement;
    for (std::size_t e = 0; e < schedule.epochs; ++e) {
        if (e % schedule.reopt_period == 0)
            placement = optimize_gateway_count(out.deployment, graph, cfg, opts);
        EpochReport row;
        row.epoch = e;
        row.placement = e / schedule.reopt_period;
        row.channel_seed = derive_seed(cfg.seed, Stream::epoch, e);
        row.gateways = placement.gateways;
        LinkGraph g = graph;
        assign_capacities(g, channel, row.channel_seed);
        const RoutingForest forest = mcst(g, placement.gateways, cfg.traffic);
        row.starved = forest.starved.size();
        row.report = evaluate_forest(forest, cfg.traffic, cfg.cost);
        out.epochs.push_back(std::move(row));
    }
    return out;
}

void write_two_scale_csv(std::ostream& out, const TwoScaleResult& result, std::uint64_t seed)
{
    CsvWriter csv(out);
    csv.header({"epoch", "placement", "M", "N", "Y", "capacity_bps", "energy_kwh", "cost_eur",
                "efficiency_mbps_per_eur", "starved", "channel_seed", "seed", "replication"});
    for (const auto& e : result.epochs) {
        const auto& r = e.report;
        csv.row(e.epoch, e.placement, r.m, r.n, r.y, r.capacity_bps,
                r.operation_kwh + r.embodied_kwh, r.cost_eur,
                to_mbps_per_eur(r.efficiency_bps_per_eur), e.starved, e.channel_seed, seed, 0);
    }
}

std::vector<GatewaySweepRow> gateway_count_sweep(const ScenarioConfig& cfg,
                                                 GatewaySweepVariable variable,
                                                 const std::vector<double>& grid,
                                                 std::size_t replications)
{
    const std::size_t cells = grid.size() * replications;
    std::vector<std::vector<GatewaySweepRow>> parts(cells);
    parallel_for(cells, [&](std::size_t idx) {
        const std::size_t k = idx / replications;
        const std::size_t r = idx % replications;
        ScenarioConfig c = cfg;
        if (variable == GatewaySweepVariable::n_sbs) {
            c.n_sbs = static_cast<std::size_t>(std::llround(grid[k]));
            c.expected_sbs.reset();
        } else {
            c.traffic.w_g_bps = grid[k];
        }
        const std::uint64_t seed = derive_seed(cfg.seed, Stream::sweep, r);
        const Deployment dep = sample_scenario(c, derive_seed(seed, Stream::deployment));
        const LinkGraph graph = build_link_graph(dep, c.d0_m);
        const std::size_t clusters = form_clusters(graph).count();
        c.max_m = std::min(c.max_m, dep.size());

        auto blank = [&](std::size_t m) {
            GatewaySweepRow row;
            row.n = dep.size();
            row.w_g_bps = c.traffic.w_g_bps;
            row.m = m;
            row.replication = r;
            row.seed = seed;
            row.clusters = clusters;
            row.y = row.capacity_bps = row.energy_kwh = row.cost_eur =
                row.efficiency_mbps_per_eur = nan_v;
            return row;
        };
        auto& rows = parts[idx];
        try {
            if (c.max_m == 0)
                return;
            const GatewayCountResult res =
                optimize_gateway_count(dep, graph, c, {c.swap_passes, nullptr});
            for (const auto& p : res.curve) {
                GatewaySweepRow row = blank(p.m);
                row.feasible = p.feasible;
                if (p.feasible) {
                    row.y = p.report.y;
                    row.capacity_bps = p.report.capacity_bps;
                    row.energy_kwh = p.report.operation_kwh + p.report.embodied_kwh;
                    row.cost_eur = p.report.cost_eur;
                    row.efficiency_mbps_per_eur = to_mbps_per_eur(p.report.efficiency_bps_per_eur);
                }
                rows.push_back(row);
            }
        } catch (const InfeasibleError&) {
            for (std::size_t m = 1; m <= c.max_m; ++m)
                rows.push_back(blank(m));
        }
    });
    std::vector<GatewaySweepRow> out;
    for (auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end(), [](const GatewaySweepRow& a, const GatewaySweepRow& b) {
        return std::tie(a.n, a.w_g_bps, a.m, a.replication) <
               std::tie(b.n, b.w_g_bps, b.m, b.replication);
    });
    return out;
}

std::vector<RoutingSweepRow> routing_sweep(const ScenarioConfig& cfg,
                                           const std::vector<double>& snr_grid,
                                           const std::vector<std::size_t>& m_values,
                                           const std::vector<RoutingAlgorithm>& algos,
                                           std::size_t replications)
{
    if (m_values.empty() || algos.empty())
        throw ConfigError("routing sweep needs at least one gateway count and algorithm");
    const std::size_t m_min = *std::min_element(m_values.begin(), m_values.end());
    const std::size_t m_max = *std::max_element(m_values.begin(), m_values.end());
    if (m_min < 1)
        throw ConfigError("gateway counts must be at least 1");

    std::vector<std::vector<RoutingSweepRow>> parts(replications);
    parallel_for(replications, [&](std::size_t r) {
        const std::uint64_t seed = derive_seed(cfg.seed, Stream::sweep, r);
        Deployment dep;
        LinkGraph graph;
        ClusterPartition clusters;
        std::size_t attempts = 0;
        while (true) {
            if (attempts == max_deploy_attempts)
                throw InfeasibleError("no deployment with at most " + std::to_string(m_min) +
                                          " clusters and more than " + std::to_string(m_max) +
                                          " SBSs after " + std::to_string(attempts) + " draws",
                                      {});
            dep = sample_scenario(cfg, derive_seed(seed, Stream::deployment, attempts));
            ++attempts;
            graph = build_link_graph(dep, cfg.d0_m);
            clusters = form_clusters(graph);
            if (dep.size() > m_max && clusters.count() <= m_min)
                break;
        }
        std::map<std::size_t, std::vector<NodeId>> placements;
        for (std::size_t m : m_values)
            placements[m] = place_gateways(graph, clusters, m, {cfg.swap_passes, nullptr}).gateways;

        auto& rows = parts[r];
        for (double snr : snr_grid) {
            LinkGraph g = graph;
            assign_capacities(g, channel_for_snr(cfg, snr), derive_seed(seed, Stream::channel));
            for (std::size_t m : m_values) {
                for (RoutingAlgorithm algo : algos) {
                    const RoutingForest forest = route(algo, g, placements[m], cfg.traffic);
                    const EvaluationReport rep = evaluate_forest(forest, cfg.traffic, cfg.cost);
                    RoutingSweepRow row;
                    row.snr_db = snr;
                    row.m = m;
                    row.algo = algo;
                    row.replication = r;
                    row.seed = seed;
                    row.n = dep.size();
                    row.deploy_attempts = attempts;
                    row.starved = forest.starved.size();
                    row.y = rep.y;
                    row.capacity_bps = rep.capacity_bps;
                    row.energy_kwh = rep.operation_kwh + rep.embodied_kwh;
                    row.cost_eur = rep.cost_eur;
                    row.efficiency_mbps_per_eur = to_mbps_per_eur(rep.efficiency_bps_per_eur);
                    rows.push_back(row);
                }
            }
        }
    });
    std::vector<RoutingSweepRow> out;
    for (auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end(), [](const RoutingSweepRow& a, const RoutingSweepRow& b) {
        return std::tie(a.snr_db, a.m, a.algo, a.replication) <
               std::tie(b.snr_db, b.m, b.algo, b.replication);
    });
    return out;
}

SweepOutput run_sweep(const SweepSpec& spec, const ScenarioConfig& cfg)
{
    validate(spec);
    validate(cfg);
    SweepOutput out;
    out.tag = spec.tag;
    out.seed = cfg.seed;
    const std::vector<RoutingAlgorithm> all_algos{RoutingAlgorithm::mcst, RoutingAlgorithm::sp,
                                                  RoutingAlgorithm::bf};
    switch (spec.tag) {
    case SweepTag::fig4:
        out.connectivity =
            connectivity_sweep(cfg.radius_m, cfg.d0_m, spec.grid, cfg.mc_trials, cfg.seed);
        break;
    case SweepTag::fig6:
        out.gateway = gateway_count_sweep(cfg, GatewaySweepVariable::n_sbs, spec.grid,
                                          spec.replications);
        break;
    case SweepTag::fig7:
        out.gateway = gateway_count_sweep(cfg, GatewaySweepVariable::w_g_bps, spec.grid,
                                          spec.replications);
        break;
    case SweepTag::fig8: {
        std::vector<std::size_t> ms;
        for (std::size_t m : {std::size_t{1}, std::size_t{5}, cfg.max_m})
            if (m <= cfg.max_m && std::find(ms.begin(), ms.end(), m) == ms.end())
                ms.push_back(m);
        out.routing = routing_sweep(cfg, spec.grid, ms, {RoutingAlgorithm::mcst},
                                    spec.replications);
        break;
    }
    case SweepTag::fig9:
        out.routing = routing_sweep(cfg, {cfg.snr_db}, to_counts(spec.grid),
                                    {RoutingAlgorithm::mcst}, spec.replications);
        break;
    case SweepTag::fig10:
    case SweepTag::fig11:
        out.routing = routing_sweep(cfg, spec.grid, {1, 5}, all_algos, spec.replications);
        break;
    }
    return out;
}

void write_gateway_sweep_csv(std::ostream& out, const std::vector<GatewaySweepRow>& rows)
{
    CsvWriter csv(out);
    csv.header({"n", "w_g_bps", "M", "replication", "seed", "clusters", "feasible", "Y",
                "capacity_bps", "energy_kwh", "cost_eur", "efficiency_mbps_per_eur"});
    for (const auto& r : rows)
        csv.row(r.n, r.w_g_bps, r.m, r.replication, r.seed, r.clusters, r.feasible, r.y,
                r.capacity_bps, r.energy_kwh, r.cost_eur, r.efficiency_mbps_per_eur);
}

void write_routing_sweep_csv(std::ostream& out, const std::vector<RoutingSweepRow>& rows)
{
    CsvWriter csv(out);
    csv.header({"snr_db", "M", "algo", "replication", "seed", "n", "deploy_attempts", "starved",
                "Y", "capacity_bps", "energy_kwh", "cost_eur", "efficiency_mbps_per_eur"});
    for (const auto& r : rows)
        csv.row(r.snr_db, r.m, to_string(r.algo), r.replication, r.seed, r.n, r.deploy_attempts,
                r.starved, r.y, r.capacity_bps, r.energy_kwh, r.cost_eur,
                r.efficiency_mbps_per_eur);
}

void write_sweep_csv(std::ostream& out, const SweepOutput& output)
{
    switch (output.tag) {
    case SweepTag::fig4: write_connectivity_csv(out, output.connectivity, output.seed); break;
    case SweepTag::fig6:
    case SweepTag::fig7: write_gateway_sweep_csv(out, output.gateway); break;
    default: write_routing_sweep_csv(out, output.routing); break;
    }
}

Uplift max_uplift(const std::vector<RoutingSweepRow>& rows, std::size_t m,
                  RoutingAlgorithm baseline, UpliftMetric metric)
{
    // snr -> (sum mcst, sum baseline)
    std::map<double, std::pair<double, double>> sums;
    for (const auto& r : rows) {
        if (r.m != m || (r.algo != RoutingAlgorithm::mcst && r.algo != baseline))
            continue;
        const double v =
            metric == UpliftMetric::capacity ? r.capacity_bps : r.efficiency_mbps_per_eur;
        auto& s = sums[r.snr_db];
        (r.algo == RoutingAlgorithm::mcst ? s.first : s.second) += v;
    }
    Uplift best{-std::numeric_limits<double>::infinity(), nan_v};
    for (const auto& [snr, s] : sums) {
        if (!(s.second > 0))
            continue;
        const double u = s.first / s.second - 1.0;
        if (u > best.value)
            best = {u, snr};
    }
    return best;
}

} // namespace backhaul
