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

#include "backhaul/config.hpp"
#include "backhaul/deployment.hpp"
#include "backhaul/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace backhaul {

// Free-space intercept 20 log10(4 pi / lambda) plus 10 gamma log10(distance),
// in dB, without shadowing. Throws std::domain_error for distance <= 0.
double mean_path_loss_db(double distance_m, const ChannelParams& p);

// Large-scale loss with one N(0, xi^2) shadowing draw taken from rng.
double path_loss_db(double distance_m, const ChannelParams& p, Rng& rng);
double path_loss_db(double distance_m, const ChannelParams& p, std::uint64_t seed);

// Uniform linear array response: entries exp(j 2 pi k d sin(theta) / lambda)
// for k = 0..count-1, scaled to unit norm.
Eigen::VectorXcd steering_vector(double theta_rad, int count, double spacing_m,
                                 double wavelength_m);

// Narrowband clustered line-of-sight MIMO link:
//   H = sqrt(N_T N_R / (Psi * eta)) * A_R D A_T^H.
struct ChannelRealization {
    Eigen::MatrixXcd h;                     // N_R x N_T
    Eigen::MatrixXcd a_r;                   // N_R x eta, receive steering vectors
    Eigen::MatrixXcd a_t;                   // N_T x eta, transmit steering vectors
    std::vector<std::complex<double>> gains; // small-scale gain alpha_u, CN(0, 1)
    std::vector<double> aoa_rad;
    std::vector<double> aod_rad;
    double psi_db = 0.0;

    double scale() const;  // sqrt(N_T N_R / (Psi_lin * eta))
    Eigen::MatrixXcd reconstruct() const;
};

ChannelRealization sample_channel(double distance_m, const ChannelParams& p, std::uint64_t seed);

// All singular values of H, descending. Computed from the stored factors via
// thin QR of the steering matrices, so the SVD is only eta x eta.
Eigen::VectorXd channel_singular_values(const ChannelRealization& real);

// Equal-power eigenmode capacity over the N_S strongest modes:
//   B_s * sum_k log2(1 + snr / N_S * s_k^2).
// Modes beyond the channel rank contribute zero.
double capacity_from_singular_values(std::span<const double> singular_values,
                                     const ChannelParams& p);
double link_capacity(const ChannelRealization& real, const ChannelParams& p);

struct LinkSample {
    double psi_db = 0.0;
    double capacity_bps = 0.0;
};

// One independent realization per edge, seeded by
// derive_seed(seed, Stream::channel, u, v). Links are evaluated independently
// (interference-free).
std::vector<LinkSample> sample_link_channels(const LinkGraph& graph, const ChannelParams& p,
                                             std::uint64_t seed);

// Samples and stores capacities on the graph.
void assign_capacities(LinkGraph& graph, const ChannelParams& p, std::uint64_t seed);

void write_links_csv(std::ostream& out, const LinkGraph& graph,
                     std::span<const LinkSample> samples);

} // namespace backhaul
