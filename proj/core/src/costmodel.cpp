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

#include "backhaul/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace backhaul {

double transport_capacity(double sum_w_bps, double y, std::size_t m, double w_s_bps,
                          double w_g_bps)
{
    if (!(y >= 1.0))
        throw std::domain_error("transport_capacity: average transmissions must be >= 1");
    if (m < 1)
        throw std::domain_error("transport_capacity: at least one gateway is required");
    const double mm = static_cast<double>(m);
    return std::min(sum_w_bps / y + mm * w_s_bps, mm * w_g_bps);
}

double simplified_capacity(std::size_t n, double w_bps, double y, std::size_t m, double w_s_bps)
{
    if (m < 1)
        throw std::domain_error("simplified_capacity: at least one gateway is required");
    if (n == 0)
        return static_cast<double>(m) * w_s_bps;
    if (!(y >= 1.0))
        throw std::domain_error("simplified_capacity: average transmissions must be >= 1");
    return static_cast<double>(n) * w_bps / y + static_cast<double>(m) * w_s_bps;
}

double average_hops(std::span<const std::size_t> hops)
{
    if (hops.empty())
        throw std::domain_error("average_hops: empty hop sequence");
    std::size_t total = 0;
    for (std::size_t h : hops) {
        if (h < 1)
            throw std::domain_error("average_hops: hop counts must be >= 1");
        total += h;
    }
    return static_cast<double>(total) / static_cast<double>(hops.size());
}

double weighted_capacity(std::span<const double> rates, std::span<const std::size_t> hops)
{
    if (rates.size() != hops.size())
        throw std::domain_error("weighted_capacity: rate and hop sequences differ in length");
    if (rates.empty())
        return 0.0;
    const double sum_w = std::accumulate(rates.begin(), rates.end(), 0.0);
    const double sum_h = static_cast<double>(std::accumulate(hops.begin(), hops.end(), std::size_t{0}));
    if (!(sum_h > 0))
        throw std::domain_error("weighted_capacity: hop counts must be >= 1");
    return static_cast<double>(rates.size()) * sum_w / sum_h;
}

EnergyBreakdown operation_energy_breakdown(std::size_t m, std::size_t n, const CostParams& p,
                                           double w_g_bps, double w_bar_bps)
{
    EnergyBreakdown e;
    e.gateway_power_w =
        static_cast<double>(m) * (p.power_a * p.p_norm_w * w_g_bps / p.w0_bps + p.power_b_w);
    e.sbs_power_w =
        static_cast<double>(n) * (p.power_a * p.p_norm_w * w_bar_bps / p.w0_bps + p.power_b_w);
    e.operation_kwh = (e.gateway_power_w + e.sbs_power_w) * p.lifetime_h / 1000.0;
    return e;
}

double operation_energy(std::size_t m, std::size_t n, const CostParams& p, double w_g_bps,
                        double w_bar_bps)
{
    return operation_energy_breakdown(m, n, p, w_g_bps, w_bar_bps).operation_kwh;
}

double embodied_energy(double operation_kwh, const CostParams& p)
{
    return operation_kwh * p.embodied_fraction / (1.0 - p.embodied_fraction);
}

double total_cost(std::size_t m, double operation_kwh, const CostParams& p)
{
    return p.zeta_eur_per_kwh * (embodied_energy(operation_kwh, p) + operation_kwh) +
           static_cast<double>(m) * p.gateway_cost_eur;
}

double cost_efficiency(double capacity_bps, std::size_t m, double operation_kwh,
                       const CostParams& p)
{
    if (capacity_bps < 0 || operation_kwh < 0)
        throw std::domain_error("cost_efficiency: inputs must be non-negative");
    const double denom = total_cost(m, operation_kwh, p);
    if (!(denom > 0))
        throw std::domain_error("cost_efficiency: total cost is zero");
    return capacity_bps / denom;
}

void price_report(EvaluationReport& r, const CostParams& p, double w_g_bps, double w_bar_bps)
{
    r.per_gateway_bps = r.m > 0 ? r.capacity_bps / static_cast<double>(r.m) : 0.0;
    r.operation_kwh = operation_energy(r.m, r.n, p, w_g_bps, w_bar_bps);
    r.embodied_kwh = embodied_energy(r.operation_kwh, p);
    r.cost_eur = total_cost(r.m, r.operation_kwh, p);
    r.efficiency_bps_per_eur = cost_efficiency(r.capacity_bps, r.m, r.operation_kwh, p);
}

} // namespace backhaul
