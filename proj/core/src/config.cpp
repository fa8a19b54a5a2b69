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

#include "backhaul/config.hpp"

#include "backhaul/channel.hpp"
#include "backhaul/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace backhaul {

double ChannelParams::snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

double ScenarioConfig::density_per_m2() const
{
    if (!expected_sbs)
        throw ConfigError("density requested but the scenario uses a fixed SBS count");
    return *expected_sbs / (std::numbers::pi * radius_m * radius_m);
}

const char* to_string(SnrReference r)
{
    switch (r) {
    case SnrReference::transmit:
        return "transmit";
    case SnrReference::d0:
        return "d0";
    case SnrReference::stream:
        return "stream";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
    if (used != v.size() || !std::isfinite(out))
        throw ConfigError("key '" + key + "': '" + v + "' is not a finite number");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v)
{
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': '" + v + "' is not a non-negative integer");
    return out;
}

struct Key {
    std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

template <class T> std::string fmt_num(T v)
{
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

#define BH_DOUBLE(name, member)                                                                    \
    {                                                                                              \
        name, Key {                                                                                \
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {                    \
                c.member = parse_double(k, v);                                                     \
            },                                                                                     \
                [](const ScenarioConfig& c) { return fmt_num(c.member); }                          \
        }                                                                                          \
    }
#define BH_COUNT(name, member, type)                                                               \
    {                                                                                              \
        name, Key {                                                                                \
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {                    \
                c.member = static_cast<type>(parse_u64(k, v));                                     \
            },                                                                                     \
                [](const ScenarioConfig& c) { return fmt_num(c.member); }                          \
        }                                                                                          \
    }

const std::map<std::string, Key>& key_table()
{
    static const std::map<std::string, Key> table = {
        BH_DOUBLE("radius_m", radius_m),
        BH_DOUBLE("d0_m", d0_m),
        {"expected_sbs",
         Key{[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                 c.expected_sbs = parse_double(k, v);
             },
             [](const ScenarioConfig& c) {
                 return c.expected_sbs ? fmt_num(*c.expected_sbs) : std::string{};
             }}},
        {"n_sbs",
         Key{[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                 c.n_sbs = static_cast<std::size_t>(parse_u64(k, v));
             },
             [](const ScenarioConfig& c) { return c.n_sbs ? fmt_num(*c.n_sbs) : std::string{}; }}},
        BH_DOUBLE("w_max_bps", traffic.w_max_bps),
        BH_DOUBLE("w_s_bps", traffic.w_s_bps),
        BH_DOUBLE("w_g_bps", traffic.w_g_bps),
        BH_DOUBLE("w_bar_bps", traffic.w_bar_bps),
        BH_DOUBLE("wavelength_m", channel.wavelength_m),
        BH_DOUBLE("pathloss_exponent", channel.pathloss_exponent),
        BH_DOUBLE("shadowing_db", channel.shadowing_db),
        BH_COUNT("paths", channel.paths, int),
        BH_DOUBLE("antenna_spacing_m", channel.antenna_spacing_m),
        BH_COUNT("n_t", channel.n_t, int),
        BH_COUNT("n_r", channel.n_r, int),
        BH_COUNT("n_rf_t", channel.n_rf_t, int),
        BH_COUNT("n_rf_r", channel.n_rf_r, int),
        BH_COUNT("n_s", channel.n_s, int),
        BH_DOUBLE("bandwidth_hz", channel.bandwidth_hz),
        BH_DOUBLE("p_max_w", channel.p_max_w),
        BH_COUNT("transmitters_per_receiver", channel.transmitters_per_receiver, int),
        BH_DOUBLE("snr_db", snr_db),
        {"snr_reference",
         Key{[](ScenarioConfig& c, const std::string& k, const std::string& v) {
                 if (v == "transmit")
                     c.snr_reference = SnrReference::transmit;
                 else if (v == "d0")
                     c.snr_reference = SnrReference::d0;
                 else if (v == "stream")
                     c.snr_reference = SnrReference::stream;
                 else
                     throw ConfigError("key '" + k +
                                       "': expected 'transmit', 'd0' or 'stream', got '" + v +
                                       "'");
             },
             [](const ScenarioConfig& c) { return std::string(to_string(c.snr_reference)); }}},
        BH_DOUBLE("zeta_eur_per_kwh", cost.zeta_eur_per_kwh),
        BH_DOUBLE("gateway_cost_eur", cost.gateway_cost_eur),
        BH_DOUBLE("power_a", cost.power_a),
        BH_DOUBLE("power_b_w", cost.power_b_w),
        BH_DOUBLE("p_norm_w", cost.p_norm_w),
        BH_DOUBLE("w0_bps", cost.w0_bps),
        BH_DOUBLE("lifetime_h", cost.lifetime_h),
        BH_DOUBLE("embodied_fraction", cost.embodied_fraction),
        BH_COUNT("max_m", max_m, std::size_t),
        BH_COUNT("seed", seed, std::uint64_t),
        BH_COUNT("epochs", epochs, std::size_t),
        BH_COUNT("reopt_period", reopt_period, std::size_t),
        BH_COUNT("swap_passes", swap_passes, std::size_t),
        BH_COUNT("mc_trials", mc_trials, std::size_t),
        BH_COUNT("replications", replications, std::size_t),
    };
    return table;
}

#undef BH_DOUBLE
#undef BH_COUNT

} // namespace

void validate(const ChannelParams& p)
{
    if (!(p.wavelength_m > 0))
        throw ConfigError("wavelength_m must be positive");
    if (!(p.shadowing_db >= 0))
        throw ConfigError("shadowing_db must be non-negative");
    if (p.paths < 1)
        throw ConfigError("paths must be at least 1");
    if (!(p.antenna_spacing_m > 0))
        throw ConfigError("antenna_spacing_m must be positive");
    if (p.n_t < 1 || p.n_r < 1)
        throw ConfigError("antenna counts must be at least 1");
    if (p.n_s < 1)
        throw ConfigError("n_s must be at least 1");
    if (p.n_s > std::min(p.n_rf_t, p.n_rf_r))
        throw ConfigError("n_s must not exceed min(n_rf_t, n_rf_r)");
    if (p.n_rf_t > p.n_t || p.n_rf_r > p.n_r)
        throw ConfigError("RF chain counts must not exceed the antenna counts on their side");
    if (!(p.bandwidth_hz > 0))
        throw ConfigError("bandwidth_hz must be positive");
    if (!(p.p_max_w > 0))
        throw ConfigError("p_max_w must be positive");
    if (p.transmitters_per_receiver < 1)
        throw ConfigError("transmitters_per_receiver must be at least 1");
    if (p.n_r < p.transmitters_per_receiver * p.n_t)
        throw ConfigError("n_r must be at least transmitters_per_receiver * n_t");
}

void validate(const CostParams& p)
{
    if (!(p.zeta_eur_per_kwh > 0) || !(p.gateway_cost_eur > 0) || !(p.power_a > 0) ||
        !(p.power_b_w > 0) || !(p.p_norm_w > 0) || !(p.w0_bps > 0) || !(p.lifetime_h > 0))
        throw ConfigError("cost parameters must all be positive");
    if (!(p.embodied_fraction >= 0 && p.embodied_fraction < 1))
        throw ConfigError("embodied_fraction must lie in [0, 1)");
}

void validate(const ScenarioConfig& c)
{
    if (!(c.radius_m > 0))
        throw ConfigError("radius_m must be positive");
    if (!(c.d0_m > 0 && c.d0_m <= 2 * c.radius_m))
        throw ConfigError("d0_m must satisfy 0 < d0_m <= 2 * radius_m");
    if (c.expected_sbs.has_value() == c.n_sbs.has_value())
        throw ConfigError("exactly one of expected_sbs and n_sbs must be given");
    if (c.expected_sbs && !(*c.expected_sbs >= 0))
        throw ConfigError("expected_sbs must be non-negative");
    const auto& t = c.traffic;
    if (!(t.w_max_bps >= 0 && t.w_s_bps >= 0 && t.w_g_bps >= 0 && t.w_bar_bps >= 0))
        throw ConfigError("traffic rates must be non-negative");
    if (t.w_max_bps > t.w_g_bps)
        throw ConfigError("w_max_bps must not exceed w_g_bps");
    if (t.w_s_bps > t.w_g_bps)
        throw ConfigError("w_s_bps must not exceed w_g_bps");
    validate(c.channel);
    validate(c.cost);
    if (c.max_m < 1)
        throw ConfigError("max_m must be at least 1");
    if (c.reopt_period < 1)
        throw ConfigError("reopt_period must be at least 1");
    if (c.epochs < 1)
        throw ConfigError("epochs must be at least 1");
    if (c.replications < 1)
        throw ConfigError("replications must be at least 1");
    if (c.mc_trials < 1)
        throw ConfigError("mc_trials must be at least 1");
}

ScenarioConfig parse_config(std::istream& in, const std::string& source_name)
{
    ScenarioConfig cfg;
    bool saw_density = false;
    bool saw_count = false;
    std::string line;
    std::size_t line_no = 0;
    const auto& table = key_table();
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source_name + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = table.find(key);
        if (it == table.end())
            throw ConfigError(source_name + ":" + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
        if (value.empty())
            throw ConfigError(source_name + ":" + std::to_string(line_no) + ": key '" + key +
                              "' has no value");
        it->second.set(cfg, key, value);
        saw_density |= key == "expected_sbs";
        saw_count |= key == "n_sbs";
    }
    if (saw_density && saw_count)
        throw ConfigError(source_name + ": expected_sbs and n_sbs are mutually exclusive");
    if (saw_count)
        cfg.expected_sbs.reset();
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

void write_config(std::ostream& out, const ScenarioConfig& cfg)
{
    for (const auto& [name, key] : key_table()) {
        const std::string v = key.get(cfg);
        if (!v.empty())
            out << name << " = " << v << '\n';
    }
}

ChannelParams channel_for_snr(const ScenarioConfig& cfg, double scenario_snr_db)
{
    ChannelParams p = cfg.channel;
    switch (cfg.snr_reference) {
    case SnrReference::transmit:
        p.snr_db = scenario_snr_db;
        break;
    case SnrReference::d0:
        p.snr_db = scenario_snr_db + mean_path_loss_db(cfg.d0_m, p);
        break;
    case SnrReference::stream: {
        const double gain = static_cast<double>(p.n_t) * p.n_r / (p.paths * p.n_s);
        p.snr_db = scenario_snr_db + mean_path_loss_db(cfg.d0_m, p) - 10.0 * std::log10(gain);
        break;
    }
    }
    return p;
}

} // namespace backhaul
