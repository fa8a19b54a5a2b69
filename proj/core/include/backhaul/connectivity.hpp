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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace backhaul {

// Area (m^2) of the disc of radius d0 centred at distance r from the cell
// centre, intersected with the macro cell of radius R. Throws
// std::domain_error unless 0 <= r <= R and d0 > 0.
double effective_coverage_area(double r_m, double radius_m, double d0_m);

// Probability that a typical SBS has no neighbour within d0, for a Poisson
// deployment with `expected_count` SBSs per macro cell on average. The annulus
// term is integrated by adaptive Gauss-Kronrod quadrature to 1e-9 absolute.
double isolation_probability(double radius_m, double d0_m, double expected_count);

// (1 - p_isolated) ^ expected_count.
double non_isolation_probability(double radius_m, double d0_m, double expected_count);

struct ConnectivityEstimate {
    double p_isolated = 0.0;      // pooled over all sampled nodes
    double p_non_isolated = 0.0;  // fraction of trials with no isolated SBS
    double p_connected = 0.0;     // fraction of trials forming a single cluster
    std::size_t trials = 0;
    std::size_t nodes_sampled = 0;
    double se_isolated = 0.0;
    double se_non_isolated = 0.0;
    double se_connected = 0.0;
};

// Monte-Carlo estimate. Trial t draws its deployment from
// derive_seed(seed, Stream::connectivity, t); an empty deployment counts as
// both connected and non-isolated, a single SBS as neither.
ConnectivityEstimate mc_connectivity(double radius_m, double d0_m, double expected_count,
                                     std::size_t trials, std::uint64_t seed);

struct ConnectivityRow {
    double expected_n = 0.0;
    double mu_per_m2 = 0.0;
    double p_iso = 0.0;
    double p_noniso_analytic = 0.0;
    ConnectivityEstimate mc;
};

// One row per expected count, analytic and Monte-Carlo side by side.
std::vector<ConnectivityRow> connectivity_sweep(double radius_m, double d0_m,
                                                const std::vector<double>& expected_counts,
                                                std::size_t trials, std::uint64_t seed);

void write_connectivity_csv(std::ostream& out, const std::vector<ConnectivityRow>& rows,
                            std::uint64_t seed);

} // namespace backhaul
