// SPDX-License-Identifier: Apache-2.0
//
// ivchan - in vivo wireless channel modelling and measurement analysis
// Copyright (C) 2026 ivchan developers
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

#include "path_loss.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ivchan
{

static std::string lower(const std::string &text)
{
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

frequency_band band_from_string(const std::string &text)
{
    std::string t = lower(text);
    t.erase(std::remove_if(t.begin(), t.end(),
                           [](unsigned char c) { return std::isspace(c) || c == '_' || c == '-'; }),
            t.end());
    if (t == "915" || t == "915mhz" || t == "ism915" || t == "0.915ghz")
        return frequency_band::ism915();
    if (t == "2400" || t == "2400mhz" || t == "2.4ghz" || t == "2.4" || t == "ism2400" || t == "ism2.4ghz")
        return frequency_band::ism2400();
    fail(errc::unknown_context, "unknown frequency band '" + text + "' (use 915MHz or 2.4GHz)");
}

const char *band_name(band_label label)
{
    return label == band_label::ism915 ? "915MHz" : "2.4GHz";
}

body_region region_from_string(const std::string &text)
{
    std::string t = lower(text);
    t.erase(std::remove_if(t.begin(), t.end(),
                           [](unsigned char c) { return std::isspace(c) || c == '_' || c == '-'; }),
            t.end());
    if (t == "heart")
        return body_region::heart;
    if (t == "stomach")
        return body_region::stomach;
    if (t == "kidneys" || t == "kidney")
        return body_region::kidneys;
    if (t == "intestine" || t == "intestines")
        return body_region::intestine;
    if (t == "torso" || t == "wholetorso")
        return body_region::whole_torso;
    fail(errc::unknown_context, "unknown anatomical region '" + text + "'");
}

const char *region_name(body_region reg)
{
    switch (reg)
    {
    case body_region::heart: return "heart";
    case body_region::stomach: return "stomach";
    case body_region::kidneys: return "kidneys";
    case body_region::intestine: return "intestine";
    case body_region::whole_torso: return "torso";
    }
    return "?";
}

double shadowing_profile::variance_at(double depth_mm) const
{
    if (bins.empty())
        fail(errc::empty_profile, "shadowing profile has no depth bins");
    if (depth_mm <= bins.front().depth_mm)
        return bins.front().variance_db2;
    if (depth_mm >= bins.back().depth_mm)
        return bins.back().variance_db2;
    std::size_t hi = 1;
    while (bins[hi].depth_mm < depth_mm)
        hi++;
    const bin &a = bins[hi - 1];
    const bin &b = bins[hi];
    if (interpolation == interp::nearest_bin)
        return (depth_mm - a.depth_mm <= b.depth_mm - depth_mm) ? a.variance_db2 : b.variance_db2;
    double w = (depth_mm - a.depth_mm) / (b.depth_mm - a.depth_mm);
    return a.variance_db2 + w * (b.variance_db2 - a.variance_db2);
}

double shadowing_profile::sigma_at(double depth_mm) const
{
    return std::sqrt(variance_at(depth_mm));
}

shadowing_profile shadowing_profile::constant_sigma(double sigma_db)
{
    shadowing_profile p;
    p.bins.push_back({10.0, sigma_db * sigma_db});
    return p;
}

double mean_path_loss(const path_loss_params &params, double depth_mm)
{
    if (!(depth_mm >= params.depth_min_mm && depth_mm <= params.depth_max_mm))
    {
        std::ostringstream msg;
        msg << "depth " << depth_mm << " mm outside model validity range [" << params.depth_min_mm
            << ", " << params.depth_max_mm << "] mm";
        fail(errc::depth_out_of_range, msg.str());
    }
    return params.pl0_db + params.m_db * (depth_mm / params.d0_mm);
}

double sample_path_loss(const path_loss_params &params, const shadowing_profile &profile,
                        double depth_mm, rng &gen)
{
    double mean = mean_path_loss(params, depth_mm);
    double variance = profile.variance_at(depth_mm);
    if (variance == 0.0)
        return mean;
    return mean + std::sqrt(variance) * gen.next_normal();
}

static void check_antenna(const antenna_params &a, const char *which)
{
    if (!(a.gain_linear >= 0.0))
        fail(errc::invalid_argument, std::string(which) + " antenna gain must be >= 0");
    if (!(a.reflection_coeff_mag >= 0.0 && a.reflection_coeff_mag <= 1.0))
        fail(errc::invalid_argument,
             std::string(which) + " reflection coefficient magnitude must be in [0, 1]");
}

double friis_received_power(double pt_w, const antenna_params &tx, const antenna_params &rx,
                            double wavelength_m, double distance_m)
{
    if (!(distance_m > 0.0))
        fail(errc::non_positive_distance, "Friis distance must be > 0 m");
    if (!(pt_w >= 0.0))
        fail(errc::invalid_argument, "transmit power must be >= 0 W");
    if (!(wavelength_m > 0.0))
        fail(errc::invalid_argument, "wavelength must be > 0 m");
    check_antenna(tx, "tx");
    check_antenna(rx, "rx");
    double mismatch_tx = 1.0 - tx.reflection_coeff_mag * tx.reflection_coeff_mag;
    double mismatch_rx = 1.0 - rx.reflection_coeff_mag * rx.reflection_coeff_mag;
    double spread = wavelength_m / (4.0 * std::numbers::pi * distance_m);
    return pt_w * tx.gain_linear * mismatch_tx * rx.gain_linear * mismatch_rx * spread * spread;
}

double external_path_loss_db(const antenna_params &tx, const antenna_params &rx,
                             double wavelength_m, double distance_m)
{
    if (distance_m == 0.0)
        return 0.0;
    // Friis gain with Pt = 1 W; the loss is its negation in dB.
    double gain = friis_received_power(1.0, tx, rx, wavelength_m, distance_m);
    return -db_from_power(gain);
}

link_budget_result concatenated_link_budget(const path_loss_params &params,
                                            const shadowing_profile &profile, double depth_mm,
                                            double external_distance_m, double pt_dbm,
                                            const antenna_params &tx, const antenna_params &rx,
                                            double sensitivity_dbm, bool use_shadowing, rng *gen)
{
    if (!(external_distance_m >= 0.0))
        fail(errc::non_positive_distance, "external segment distance must be >= 0 m");
    link_budget_result out;
    if (use_shadowing)
    {
        if (gen == nullptr)
            fail(errc::invalid_argument, "shadowing requested without a random source");
        out.in_body_pl_db = sample_path_loss(params, profile, depth_mm, *gen);
        out.shadowing_sigma_db = profile.sigma_at(depth_mm);
    }
    else
    {
        out.in_body_pl_db = mean_path_loss(params, depth_mm);
        out.shadowing_sigma_db = 0.0;
    }
    out.external_pl_db =
        external_path_loss_db(tx, rx, params.band.wavelength_m(), external_distance_m);
    out.total_pl_db = out.in_body_pl_db + out.external_pl_db;
    out.rx_power_dbm = pt_dbm - out.total_pl_db;
    out.margin_db = out.rx_power_dbm - sensitivity_dbm;
    return out;
}

double outage_probability(const path_loss_params &params, const shadowing_profile &profile,
                          double depth_mm, double max_pl_db)
{
    double mean = mean_path_loss(params, depth_mm);
    double sigma = profile.sigma_at(depth_mm);
    if (sigma == 0.0)
        return mean > max_pl_db ? 1.0 : 0.0;
    return q_function((max_pl_db - mean) / sigma);
}

double required_tx_power_dbm(double total_pl_db, double sensitivity_dbm, double margin_db)
{
    return sensitivity_dbm + total_pl_db + margin_db;
}

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

} // namespace ivchan
