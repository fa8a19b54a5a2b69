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

#include "backhaul/connectivity.hpp"

#include "backhaul/clustering.hpp"
#include "backhaul/csv.hpp"
#include "backhaul/deployment.hpp"
#include "backhaul/errors.hpp"
#include "backhaul/parallel.hpp"
#include "backhaul/rng.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace backhaul {

namespace {

constexpr double pi = std::numbers::pi;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

void check_geometry(double radius_m, double d0_m, double expected_count)
{
    if (!(radius_m > 0) || !(d0_m > 0))
        throw std::domain_error("radius and d0 must be positive");
    if (!(expected_count >= 0) || !std::isfinite(expected_count))
        throw std::domain_error("expected SBS count must be finite and non-negative");
}

} // namespace

double effective_coverage_area(double r, double R, double d0)
{
    if (!(R > 0) || !(d0 > 0))
        throw std::domain_error("effective_coverage_area: radius and d0 must be positive");
    if (!(r >= 0) || r > R)
        throw std::domain_error("effective_coverage_area: r must lie in [0, R]");
    if (r + d0 <= R)
        return pi * d0 * d0;
    if (r + R <= d0)
        return pi * R * R;
    // Lens between the SBS disc and the macro cell.
    const double xi = (r + d0 + R) * (-r + d0 + R) * (r - d0 + R) * (r + d0 - R);
    const double a1 = d0 * d0 * std::acos(clamp_unit((r * r + d0 * d0 - R * R) / (2 * d0 * r)));
    const double a2 = R * R * std::acos(clamp_unit((r * r - d0 * d0 + R * R) / (2 * R * r)));
    return a1 + a2 - 0.5 * std::sqrt(std::max(xi, 0.0));
}

double isolation_probability(double R, double d0, double expected_count)
{
    check_geometry(R, d0, expected_count);
    const double mu = expected_count / (pi * R * R);
    const double inner = std::max(R - d0, 0.0);

    // SBS deep inside the cell: coverage disc lies entirely within it.
    const double interior = std::exp(-mu * pi * d0 * d0) * (inner * inner) / (R * R);

    auto integrand = [&](double r) {
        return std::exp(-mu * effective_coverage_area(r, R, d0)) * 2.0 * r / (R * R);
    };
    double error = 0.0;
    const double annulus = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, inner, R, 20, 1e-13, &error);
    if (!std::isfinite(annulus) || error > 1e-9) {
        std::ostringstream os;
        os << "isolation_probability: annulus quadrature did not converge (R=" << R
           << ", d0=" << d0 << ", expected=" << expected_count << ", error estimate=" << error
           << ")";
        throw NumericalError(os.str());
    }
    return std::clamp(interior + annulus, 0.0, 1.0);
}

double non_isolation_probability(double R, double d0, double expected_count)
{
    const double p = isolation_probability(R, d0, expected_count);
    if (expected_count == 0)
        return 1.0;
    return std::pow(1.0 - p, expected_count);
}

namespace {

struct TrialOutcome {
    std::size_t nodes = 0;
    std::size_t isolated = 0;
    bool connected = true;
};

// Neighbour search on a square grid with cell side d0, so only the 3x3 block
// around a node's cell can hold neighbours.
TrialOutcome run_trial(const Deployment& dep, double d0)
{
    TrialOutcome out;
    const auto& pts = dep.positions;
    const std::size_t n = pts.size();
    out.nodes = n;
    if (n == 0)
        return out;

    const double R = dep.radius_m;
    const std::size_t side = static_cast<std::size_t>(std::ceil(2 * R / d0)) + 1;
    auto cell_of = [&](double c) {
        return std::min(side - 1, static_cast<std::size_t>(std::floor((c + R) / d0)));
    };
    std::vector<std::vector<std::size_t>> grid(side * side);
    for (std::size_t i = 0; i < n; ++i)
        grid[cell_of(pts[i].y_m) * side + cell_of(pts[i].x_m)].push_back(i);

    DisjointSets sets(n);
    std::vector<bool> has_neighbor(n, false);
    const double d0_sq = d0 * d0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cx = cell_of(pts[i].x_m);
        const std::size_t cy = cell_of(pts[i].y_m);
        for (std::size_t gy = cy == 0 ? 0 : cy - 1; gy <= std::min(side - 1, cy + 1); ++gy)
            for (std::size_t gx = cx == 0 ? 0 : cx - 1; gx <= std::min(side - 1, cx + 1); ++gx)
                for (std::size_t j : grid[gy * side + gx]) {
                    if (j <= i)
                        continue;
                    const double dx = pts[i].x_m - pts[j].x_m;
                    const double dy = pts[i].y_m - pts[j].y_m;
                    if (dx * dx + dy * dy <= d0_sq) {
                        has_neighbor[i] = has_neighbor[j] = true;
                        sets.unite(i, j);
                    }
                }
    }
    out.isolated = static_cast<std::size_t>(std::count(has_neighbor.begin(), has_neighbor.end(), false));
    // A lone SBS is isolated, so it does not count as connected either.
    out.connected = out.isolated == 0 && sets.set_count() == 1;
    return out;
}

double binomial_se(double p, std::size_t n)
{
    return n == 0 ? 0.0 : std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(n));
}

} // namespace

ConnectivityEstimate mc_connectivity(double R, double d0, double expected_count,
                                     std::size_t trials, std::uint64_t seed)
{
    check_geometry(R, d0, expected_count);
    if (trials < 1)
        throw std::domain_error("mc_connectivity: trials must be at least 1");

    ScenarioConfig cfg;
    cfg.radius_m = R;
    cfg.d0_m = d0;
    cfg.expected_sbs = expected_count;
    cfg.n_sbs.reset();

    std::vector<TrialOutcome> outcomes(trials);
    parallel_for(trials, [&](std::size_t t) {
        const Deployment dep = sample_deployment(cfg, derive_seed(seed, Stream::connectivity, t));
        outcomes[t] = run_trial(dep, d0);
    });

    std::size_t nodes = 0, isolated = 0, non_isolated = 0, connected = 0;
    for (const auto& o : outcomes) {
        nodes += o.nodes;
        isolated += o.isolated;
        non_isolated += o.isolated == 0 ? 1 : 0;
        connected += o.connected ? 1 : 0;
    }

    ConnectivityEstimate est;
    est.trials = trials;
    est.nodes_sampled = nodes;
    est.p_isolated = nodes == 0 ? 0.0 : static_cast<double>(isolated) / static_cast<double>(nodes);
    est.p_non_isolated = static_cast<double>(non_isolated) / static_cast<double>(trials);
    est.p_connected = static_cast<double>(connected) / static_cast<double>(trials);
    est.se_isolated = binomial_se(est.p_isolated, nodes);
    est.se_non_isolated = binomial_se(est.p_non_isolated, trials);
    est.se_connected = binomial_se(est.p_connected, trials);
    return est;
}

std::vector<ConnectivityRow> connectivity_sweep(double R, double d0,
                                                const std::vector<double>& expected_counts,
                                                std::size_t trials, std::uint64_t seed)
{
    std::vector<ConnectivityRow> rows;
    rows.reserve(expected_counts.size());
    for (std::size_t k = 0; k < expected_counts.size(); ++k) {
        const double n = expected_counts[k];
        ConnectivityRow row;
        row.expected_n = n;
        row.mu_per_m2 = n / (pi * R * R);
        row.p_iso = isolation_probability(R, d0, n);
        row.p_noniso_analytic = non_isolation_probability(R, d0, n);
        row.mc = mc_connectivity(R, d0, n, trials, derive_seed(seed, Stream::sweep, k));
        rows.push_back(row);
    }
    return rows;
}

void write_connectivity_csv(std::ostream& out, const std::vector<ConnectivityRow>& rows,
                            std::uint64_t seed)
{
    CsvWriter csv(out);
    csv.header({"mu", "expected_n", "p_iso", "p_noniso_analytic", "p_noniso_mc", "p_con_mc",
                "se_noniso", "se_con", "trials", "seed", "replication"});
    for (const auto& r : rows)
        csv.row(r.mu_per_m2, r.expected_n, r.p_iso, r.p_noniso_analytic, r.mc.p_non_isolated,
                r.mc.p_connected, r.mc.se_non_isolated, r.mc.se_connected, r.mc.trials, seed, 0);
}

} // namespace backhaul
