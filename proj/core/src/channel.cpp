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

#include "backhaul/csv.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace backhaul {

namespace {
constexpr double pi = std::numbers::pi;
}

double mean_path_loss_db(double distance_m, const ChannelParams& p)
{
    if (!(distance_m > 0))
        throw std::domain_error("path loss: distance must be positive");
    const double beta = 20.0 * std::log10(4.0 * pi / p.wavelength_m);
    return beta + 10.0 * p.pathloss_exponent * std::log10(distance_m);
}

double path_loss_db(double distance_m, const ChannelParams& p, Rng& rng)
{
    const double mean = mean_path_loss_db(distance_m, p);
    if (p.shadowing_db == 0.0)
        return mean;
    return mean + std::normal_distribution<double>(0.0, p.shadowing_db)(rng);
}

double path_loss_db(double distance_m, const ChannelParams& p, std::uint64_t seed)
{
    Rng rng(seed);
    return path_loss_db(distance_m, p, rng);
}

Eigen::VectorXcd steering_vector(double theta_rad, int count, double spacing_m,
                                 double wavelength_m)
{
    if (count < 1)
        throw std::invalid_argument("steering_vector: count must be at least 1");
    Eigen::VectorXcd a(count);
    const double phase_step = 2.0 * pi * spacing_m * std::sin(theta_rad) / wavelength_m;
    const double norm = 1.0 / std::sqrt(static_cast<double>(count));
    for (int k = 0; k < count; ++k)
        a[k] = std::polar(norm, phase_step * k);
    return a;
}

double ChannelRealization::scale() const
{
    const double psi_lin = std::pow(10.0, psi_db / 10.0);
    const double eta = static_cast<double>(gains.size());
    return std::sqrt(static_cast<double>(a_t.rows() * a_r.rows()) / (psi_lin * eta));
}

Eigen::MatrixXcd ChannelRealization::reconstruct() const
{
    Eigen::VectorXcd d(static_cast<Eigen::Index>(gains.size()));
    for (std::size_t u = 0; u < gains.size(); ++u)
        d[static_cast<Eigen::Index>(u)] = gains[u];
    return scale() * a_r * d.asDiagonal() * a_t.adjoint();
}

ChannelRealization sample_channel(double distance_m, const ChannelParams& p, std::uint64_t seed)
{
    Rng rng(seed);
    ChannelRealization real;
    real.psi_db = path_loss_db(distance_m, p, rng);

    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    // CN(0, 1): independent real and imaginary parts of variance 1/2.
    std::normal_distribution<double> half(0.0, std::sqrt(0.5));
    const int eta = p.paths;
    real.a_r.resize(p.n_r, eta);
    real.a_t.resize(p.n_t, eta);
    for (int u = 0; u < eta; ++u) {
        const double aoa = angle(rng);
        const double aod = angle(rng);
        const double re = half(rng);
        const double im = half(rng);
        real.aoa_rad.push_back(aoa);
        real.aod_rad.push_back(aod);
        real.gains.emplace_back(re, im);
        real.a_r.col(u) = steering_vector(aoa, p.n_r, p.antenna_spacing_m, p.wavelength_m);
        real.a_t.col(u) = steering_vector(aod, p.n_t, p.antenna_spacing_m, p.wavelength_m);
    }
    real.h = real.reconstruct();
    return real;
}

namespace {

// Upper-triangular factor of a thin QR, rows limited to the column rank bound.
Eigen::MatrixXcd thin_r(const Eigen::MatrixXcd& a)
{
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    const Eigen::Index k = std::min(a.rows(), a.cols());
    Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    return r;
}

} // namespace

Eigen::VectorXd channel_singular_values(const ChannelRealization& real)
{
    const Eigen::Index eta = static_cast<Eigen::Index>(real.gains.size());
    Eigen::VectorXcd d(eta);
    for (Eigen::Index u = 0; u < eta; ++u)
        d[u] = real.gains[static_cast<std::size_t>(u)];
    // H = s Q_R (R_R D R_T^H) Q_T^H with orthonormal Q factors.
    const Eigen::MatrixXcd core = real.scale() * thin_r(real.a_r) * d.asDiagonal() *
                                  thin_r(real.a_t).adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(core);
    return svd.singularValues();
}

double capacity_from_singular_values(std::span<const double> sv, const ChannelParams& p)
{
    const double per_stream = p.snr_linear() / static_cast<double>(p.n_s);
    double bits = 0.0;
    for (std::size_t k = 0; k < sv.size() && k < static_cast<std::size_t>(p.n_s); ++k)
        bits += std::log2(1.0 + per_stream * sv[k] * sv[k]);
    return p.bandwidth_hz * bits;
}

double link_capacity(const ChannelRealization& real, const ChannelParams& p)
{
    const Eigen::VectorXd sv = channel_singular_values(real);
    return capacity_from_singular_values({sv.data(), static_cast<std::size_t>(sv.size())}, p);
}

std::vector<LinkSample> sample_link_channels(const LinkGraph& graph, const ChannelParams& p,
                                             std::uint64_t seed)
{
    std::vector<LinkSample> out;
    out.reserve(graph.edges().size());
    for (const Edge& e : graph.edges()) {
        const ChannelRealization real =
            sample_channel(e.length_m, p, derive_seed(seed, Stream::channel, e.u, e.v));
        out.push_back({real.psi_db, link_capacity(real, p)});
    }
    return out;
}

void assign_capacities(LinkGraph& graph, const ChannelParams& p, std::uint64_t seed)
{
    const auto samples = sample_link_channels(graph, p, seed);
    std::vector<double> caps;
    caps.reserve(samples.size());
    for (const auto& s : samples)
        caps.push_back(s.capacity_bps);
    graph.set_capacities(std::move(caps));
}

void write_links_csv(std::ostream& out, const LinkGraph& graph,
                     std::span<const LinkSample> samples)
{
    CsvWriter csv(out);
    csv.header({"src", "dst", "distance_m", "psi_db", "capacity_bps"});
    const auto edges = graph.edges();
    for (std::size_t e = 0; e < edges.size() && e < samples.size(); ++e)
        csv.row(edges[e].u, edges[e].v, edges[e].length_m, samples[e].psi_db,
                samples[e].capacity_bps);
}

} // namespace backhaul
