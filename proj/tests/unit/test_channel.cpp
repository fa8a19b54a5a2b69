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

#include "oracles/oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace backhaul;

namespace {

constexpr double pi = std::numbers::pi;

ChannelParams small_array(int n_t, int n_r, int paths, int n_s)
{
    ChannelParams p;
    p.n_t = n_t;
    p.n_r = n_r;
    p.n_rf_t = n_s;
    p.n_rf_r = n_s;
    p.n_s = n_s;
    p.paths = paths;
    return p;
}

double sv_capacity(const Eigen::VectorXd& sv, const ChannelParams& p)
{
    return capacity_from_singular_values({sv.data(), static_cast<std::size_t>(sv.size())}, p);
}

} // namespace

TEST_CASE("path loss intercept and log law")
{
    ChannelParams p;
    CHECK(mean_path_loss_db(1.0, p) == doctest::Approx(20 * std::log10(4 * pi / 0.005)));
    CHECK(mean_path_loss_db(240.0, p) - mean_path_loss_db(120.0, p) ==
          doctest::Approx(10 * 2.0 * std::log10(2.0)));
    p.pathloss_exponent = 3.5;
    CHECK(mean_path_loss_db(80.0, p) - mean_path_loss_db(40.0, p) ==
          doctest::Approx(35.0 * std::log10(2.0)));
    CHECK(path_loss_db(50.0, p, 7) == mean_path_loss_db(50.0, p));
    CHECK_THROWS_AS(mean_path_loss_db(0.0, p), std::domain_error);
}

TEST_CASE("shadowing has the configured variance")
{
    ChannelParams p;
    p.shadowing_db = 4.0;
    Rng rng(12);
    const double mean = mean_path_loss_db(100, p);
    const int draws = 100000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < draws; ++i) {
        const double s = path_loss_db(100, p, rng) - mean;
        s1 += s;
        s2 += s * s;
    }
    const double var = s2 / draws - (s1 / draws) * (s1 / draws);
    CHECK(std::abs(var - 16.0) / 16.0 < 0.02);
}

TEST_CASE("steering vector geometry")
{
    const Eigen::VectorXcd broadside = steering_vector(0.0, 8, 0.0025, 0.005);
    for (Eigen::Index k = 0; k < 8; ++k)
        CHECK(std::abs(broadside[k] - std::complex<double>(1 / std::sqrt(8.0), 0)) < 1e-15);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> theta(-pi, pi);
    for (int i = 0; i < 20; ++i)
        CHECK(steering_vector(theta(rng), 37, 0.0025, 0.005).norm() == doctest::Approx(1.0));
    const Eigen::VectorXcd endfire = steering_vector(pi / 2, 4, 0.0025, 0.005);
    for (Eigen::Index k = 0; k < 4; ++k) {
        const std::complex<double> expect = std::polar(0.5, pi * static_cast<double>(k));
        CHECK(std::abs(endfire[k] - expect) < 1e-12);
    }
    CHECK_THROWS_AS(steering_vector(0.0, 0, 0.0025, 0.005), std::invalid_argument);
}

TEST_CASE("single-path channel has rank one")
{
    const ChannelParams p = small_array(16, 128, 1, 1);
    const ChannelRealization real = sample_channel(120, p, 5);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(real.h);
    const Eigen::VectorXd s = svd.singularValues();
    CHECK(s[0] > 0);
    CHECK(s[1] < 1e-12 * s[0]);
}

TEST_CASE("mean channel energy equals the array gain over the path loss")
{
    const ChannelParams p;
    const double psi = std::pow(10.0, mean_path_loss_db(150, p) / 10.0);
    const double expect = p.n_t * p.n_r / psi;
    const int draws = 10000;
    double sum = 0;
    for (int i = 0; i < draws; ++i)
        sum += sample_channel(150, p, derive_seed(11, Stream::channel, i)).h.squaredNorm();
    CHECK(std::abs(sum / draws - expect) / expect < 0.03);
}

TEST_CASE("channel realization is bit-identical per seed")
{
    ChannelParams p;
    p.paths = 2;
    const ChannelRealization a = sample_channel(90, p, 1234);
    const ChannelRealization b = sample_channel(90, p, 1234);
    CHECK(a.h == b.h);
    CHECK(a.aoa_rad == b.aoa_rad);
    CHECK_FALSE(a.h == sample_channel(90, p, 1235).h);
}

TEST_CASE("stored factors reconstruct the channel matrix")
{
    const ChannelParams p;
    const ChannelRealization real = sample_channel(75, p, 8);
    REQUIRE(real.h.rows() == p.n_r);
    REQUIRE(real.h.cols() == p.n_t);
    const Eigen::MatrixXcd again = real.reconstruct();
    CHECK((again - real.h).norm() <= 1e-12 * real.h.norm());
}

TEST_CASE("factored singular values match a direct SVD")
{
    const ChannelParams p;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ChannelRealization real = sample_channel(100, p, seed);
        const Eigen::VectorXd fast = channel_singular_values(real);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(real.h);
        const Eigen::VectorXd full = svd.singularValues();
        for (Eigen::Index k = 0; k < fast.size(); ++k)
            CHECK(std::abs(fast[k] - full[k]) <= 1e-9 * full[0]);
        // Everything past the path count vanishes.
        CHECK(full[p.paths] <= 1e-10 * full[0]);
    }
}

TEST_CASE("zero channel carries nothing")
{
    const ChannelParams p;
    const double zeros[] = {0.0, 0.0, 0.0};
    CHECK(capacity_from_singular_values(zeros, p) == 0.0);
    CHECK(oracle::determinant_capacity(Eigen::MatrixXcd::Zero(8, 4), p.snr_linear(), 2,
                                       p.bandwidth_hz) == 0.0);
}

TEST_CASE("rank-one capacity")
{
    ChannelParams p = small_array(16, 128, 1, 1);
    p.snr_db = 95;
    const ChannelRealization real = sample_channel(60, p, 21);
    const double expect = p.bandwidth_hz * std::log2(1 + p.snr_linear() * real.h.squaredNorm());
    CHECK(link_capacity(real, p) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("singular-value capacity equals the determinant form")
{
    std::mt19937_64 rng(44);
    std::normal_distribution<double> g(0.0, 1.0);
    ChannelParams p = small_array(4, 8, 3, 2);
    p.snr_db = 7;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd h(8, 4);
        for (Eigen::Index i = 0; i < h.size(); ++i)
            h.data()[i] = {g(rng), g(rng)};
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        const double fast = sv_capacity(svd.singularValues(), p);
        const double det = oracle::determinant_capacity(h, p.snr_linear(), p.n_s, p.bandwidth_hz);
        CHECK(std::abs(fast - det) / det < 1e-10);
        // With every stream in use the top block is the whole Gram matrix.
        ChannelParams all = p;
        all.n_s = 4;
        all.n_rf_t = all.n_rf_r = 4;
        const double full = sv_capacity(svd.singularValues(), all);
        CHECK(std::abs(full - oracle::full_determinant_capacity(h, all.snr_linear(), 4,
                                                                all.bandwidth_hz)) /
                  full <
              1e-10);
    }
}

TEST_CASE("capacity is non-decreasing in SNR and stream count")
{
    ChannelParams p;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ChannelRealization real = sample_channel(150, p, seed);
        double prev = 0;
        for (double snr = 60; snr <= 140; snr += 5) {
            p.snr_db = snr;
            const double c = link_capacity(real, p);
            CHECK(c >= prev);
            prev = c;
        }
        p.snr_db = 100;
        ChannelParams one = p;
        one.n_s = 1;
        CHECK(link_capacity(real, one) <= link_capacity(real, p));
    }
}

TEST_CASE("per-link draws do not depend on the rest of the graph")
{
    const ChannelParams p;
    LinkGraph small(3, {{0, 1, 120.0}});
    LinkGraph big(3, {{0, 1, 120.0}, {0, 2, 80.0}, {1, 2, 60.0}});
    const auto a = sample_link_channels(small, p, 77);
    const auto b = sample_link_channels(big, p, 77);
    CHECK(a[0].capacity_bps == b[0].capacity_bps);
    CHECK(a[0].psi_db == b[0].psi_db);
    assign_capacities(big, p, 77);
    REQUIRE(big.has_capacities());
    CHECK(big.capacity(0) == b[0].capacity_bps);
    CHECK(big.capacity(1) != big.capacity(2));
}

TEST_CASE("links CSV layout")
{
    const ChannelParams p;
    const LinkGraph g(2, {{0, 1, 50.0}});
    const auto samples = sample_link_channels(g, p, 1);
    std::ostringstream out;
    write_links_csv(out, g, samples);
    CHECK(out.str().rfind("src,dst,distance_m,psi_db,capacity_bps\n0,1,50,", 0) == 0);
}
