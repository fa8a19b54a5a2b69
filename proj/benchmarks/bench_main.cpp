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
#include "backhaul/config.hpp"
#include "backhaul/connectivity.hpp"
#include "backhaul/gateway_opt.hpp"
#include "backhaul/routing.hpp"

#include "support.hpp"

#include <benchmark/benchmark.h>

using namespace backhaul;

namespace {

LinkGraph sampled(std::size_t n)
{
    LinkGraph g = fixture::connected_random_graph(n, 500, 200, 7);
    ScenarioConfig cfg;
    assign_capacities(g, channel_for_snr(cfg, cfg.snr_db), 11);
    return g;
}

void BM_Mcst(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const LinkGraph g = sampled(n);
    const std::vector<NodeId> gws = unknow_gateway(g, 5).gateways;
    const TrafficParams t;
    for (auto _ : state)
        benchmark::DoNotOptimize(mcst(g, gws, t));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Mcst)->RangeMultiplier(2)->Range(50, 400)->Complexity();

void BM_Baselines(benchmark::State& state)
{
    const LinkGraph g = sampled(200);
    const std::vector<NodeId> gws = unknow_gateway(g, 5).gateways;
    const TrafficParams t;
    const auto algo = static_cast<RoutingAlgorithm>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(route(algo, g, gws, t));
    state.SetLabel(to_string(algo));
}
BENCHMARK(BM_Baselines)->DenseRange(0, 2);

void BM_GatewayPlacement(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const LinkGraph g = fixture::connected_random_graph(n, 500, 200, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(unknow_gateway(g, 5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GatewayPlacement)->RangeMultiplier(2)->Range(25, 400)->Complexity();

void BM_LinkCapacity(benchmark::State& state)
{
    ChannelParams p;
    p.paths = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const ChannelRealization real = sample_channel(150, p, ++seed);
        benchmark::DoNotOptimize(link_capacity(real, p));
    }
}
BENCHMARK(BM_LinkCapacity)->Arg(1)->Arg(3)->Arg(8);

void BM_McConnectivity(benchmark::State& state)
{
    const double expected = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_connectivity(500, 200, expected, 1000, 5));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_McConnectivity)->Arg(50)->Arg(126)->Arg(200);

} // namespace

BENCHMARK_MAIN();
