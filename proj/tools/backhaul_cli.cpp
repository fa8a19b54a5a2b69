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
#include "backhaul/config.hpp"
#include "backhaul/connectivity.hpp"
#include "backhaul/csv.hpp"
#include "backhaul/deployment.hpp"
#include "backhaul/errors.hpp"
#include "backhaul/experiment.hpp"
#include "backhaul/gateway_opt.hpp"
#include "backhaul/rng.hpp"
#include "backhaul/routing.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bh = backhaul;

namespace {

constexpr int exit_config = 2;
constexpr int exit_infeasible = 3;
constexpr int exit_numerical = 4;

struct GlobalOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replications;
    std::string out = "-";
};

bh::ScenarioConfig load(const GlobalOptions& g)
{
    std::stringstream text;
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in)
            throw bh::ConfigError("cannot open config file '" + g.config_path + "'");
        text << in.rdbuf() << '\n';
    }
    for (const auto& kv : g.overrides)
        text << kv << '\n';
    bh::ScenarioConfig cfg =
        bh::parse_config(text, g.config_path.empty() ? "<command line>" : g.config_path);
    if (g.seed)
        cfg.seed = *g.seed;
    if (g.replications)
        cfg.replications = *g.replications;
    validate(cfg);
    return cfg;
}

// Writes to the named file, or stdout for "-".
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw bh::ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

bh::Deployment deploy(const bh::ScenarioConfig& cfg)
{
    return sample_scenario(cfg, bh::derive_seed(cfg.seed, bh::Stream::deployment));
}

std::vector<bh::NodeId> choose_gateways(const bh::Deployment& dep, const bh::LinkGraph& graph,
                                        const bh::ScenarioConfig& cfg, std::size_t m)
{
    const bh::GatewaySearchOptions opts{cfg.swap_passes, nullptr};
    if (m > 0)
        return place_gateways(graph, bh::form_clusters(graph), m, opts).gateways;
    return optimize_gateway_count(dep, graph, cfg, opts).gateways;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wireless backhaul deployment, gateway placement and routing simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    app.add_option("--config", g.config_path, "Scenario file (key = value lines)");
    app.add_option("--set", g.overrides, "Override one config key, e.g. --set snr_db=20");
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--out", g.out, "Output CSV path, '-' for stdout");
    app.add_option("--replications", g.replications, "Replications per sweep point");

    auto* deploy_cmd = app.add_subcommand("deploy", "Sample SBS positions");

    auto* cluster_cmd = app.add_subcommand("cluster", "Connection clusters of a deployment");

    std::vector<double> expected;
    std::optional<std::size_t> trials;
    auto* conn_cmd = app.add_subcommand("connectivity", "Analytic vs Monte-Carlo non-isolation");
    conn_cmd->add_option("--expected", expected, "Expected SBS counts (default 20..200 step 10)");
    conn_cmd->add_option("--trials", trials, "Monte-Carlo trials per point");

    std::size_t swap_passes = 0;
    std::string positions_path;
    auto* opt_cmd = app.add_subcommand("optimize-gateways", "Sweep M and place gateways");
    opt_cmd->add_option("--swap-passes", swap_passes, "Swap refinement passes (default from config)");
    opt_cmd->add_option("--positions", positions_path, "Also write gateway coordinates here");

    std::string algo_name;
    std::size_t route_m = 0;
    std::vector<double> compare_snr;
    auto* route_cmd = app.add_subcommand("route", "Route one realization");
    route_cmd->add_option("algorithm", algo_name, "mcst, sp, bf, or all for a comparison table")
        ->required()
        ->check(CLI::IsMember({"mcst", "sp", "bf", "all"}));
    route_cmd->add_option("--m", route_m, "Gateway count (default: cost-optimal M)");
    route_cmd->add_option("--snr", compare_snr, "SNR points in dB for 'all' (default -10..30 step 5)");

    auto* two_cmd = app.add_subcommand("two-scale", "Long-scale placement with per-epoch MCST");

    std::string tag_name;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    sweep_cmd->add_option("tag", tag_name, "fig4, fig6, fig7, fig8, fig9, fig10 or fig11")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        bh::ScenarioConfig cfg = load(g);
        Output out(g.out);
        std::ostream& os = out.stream();

        if (*deploy_cmd) {
            write_deployment_csv(os, deploy(cfg));
        } else if (*cluster_cmd) {
            const auto dep = deploy(cfg);
            write_clusters_csv(os, bh::form_clusters(build_link_graph(dep, cfg.d0_m)));
        } else if (*conn_cmd) {
            if (expected.empty())
                expected = default_sweep_spec(bh::SweepTag::fig4, cfg).grid;
            const auto rows = bh::connectivity_sweep(cfg.radius_m, cfg.d0_m, expected,
                                                 trials.value_or(cfg.mc_trials), cfg.seed);
            bh::write_connectivity_csv(os, rows, cfg.seed);
        } else if (*opt_cmd) {
            if (swap_passes > 0)
                cfg.swap_passes = swap_passes;
            const auto dep = deploy(cfg);
            const auto graph = build_link_graph(dep, cfg.d0_m);
            const auto res = optimize_gateway_count(dep, graph, cfg, {cfg.swap_passes, nullptr});
            write_gateway_curve_csv(os, res);
            if (!positions_path.empty()) {
                Output pos(positions_path);
                write_gateway_positions_csv(pos.stream(), res);
            }
            std::cerr << "M_opt = " << res.m_opt << '\n';
        } else if (*route_cmd) {
            const auto dep = deploy(cfg);
            const auto graph = build_link_graph(dep, cfg.d0_m);
            const auto gateways = choose_gateways(dep, graph, cfg, route_m);
            const std::uint64_t channel_seed = bh::derive_seed(cfg.seed, bh::Stream::channel);
            if (algo_name == "all") {
                if (compare_snr.empty())
                    compare_snr = default_sweep_spec(bh::SweepTag::fig11, cfg).grid;
                bh::CsvWriter csv(os);
                csv.header({"snr_db", "algo", "capacity_bps", "efficiency_mbps_per_eur"});
                for (double snr : compare_snr) {
                    bh::LinkGraph gsnr = graph;
                    assign_capacities(gsnr, channel_for_snr(cfg, snr), channel_seed);
                    for (auto algo : {bh::RoutingAlgorithm::mcst, bh::RoutingAlgorithm::sp,
                                      bh::RoutingAlgorithm::bf}) {
                        const auto rep =
                            evaluate_forest(route(algo, gsnr, gateways, cfg.traffic), cfg.traffic,
                                            cfg.cost);
                        csv.row(snr, to_string(algo), rep.capacity_bps,
                                bh::to_mbps_per_eur(rep.efficiency_bps_per_eur));
                    }
                }
            } else {
                bh::LinkGraph gsnr = graph;
                assign_capacities(gsnr, channel_for_snr(cfg, cfg.snr_db), channel_seed);
                const auto forest =
                    route(bh::parse_routing_algorithm(algo_name), gsnr, gateways, cfg.traffic);
                write_forest_csv(os, forest);
                const auto rep = evaluate_forest(forest, cfg.traffic, cfg.cost);
                std::cerr << "capacity_bps = " << rep.capacity_bps
                          << ", efficiency_mbps_per_eur = "
                          << bh::to_mbps_per_eur(rep.efficiency_bps_per_eur)
                          << ", starved = " << forest.starved.size() << '\n';
            }
        } else if (*two_cmd) {
            write_two_scale_csv(os, run_two_scale(cfg), cfg.seed);
        } else if (*sweep_cmd) {
            bh::SweepSpec spec = default_sweep_spec(bh::parse_sweep_tag(tag_name), cfg);
            if (g.replications && spec.tag != bh::SweepTag::fig4)
                spec.replications = *g.replications;
            spec.output_path = g.out;
            write_sweep_csv(os, run_sweep(spec, cfg));
        }
    } catch (const bh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const bh::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        if (!e.nodes().empty()) {
            std::cerr << "unserved SBS:";
            for (auto v : e.nodes())
                std::cerr << ' ' << v;
            std::cerr << '\n';
        }
        return exit_infeasible;
    } catch (const bh::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
