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

#ifndef ivchan_core_path_loss_H
#define ivchan_core_path_loss_H

#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "units.hpp"

namespace ivchan
{

enum class band_label
{
    ism915,
    ism2400,
};

struct frequency_band
{
    band_label label = band_label::ism915;
    double carrier_hz = 915e6;

    double wavelength_m() const { return ivchan::wavelength_m(carrier_hz); }

    static frequency_band ism915() { return {band_label::ism915, 915e6}; }
    static frequency_band ism2400() { return {band_label::ism2400, 2.4e9}; }
};

// Band label from user input, e.g. "915MHz", "915", "2.4GHz", "2400".
frequency_band band_from_string(const std::string &text);
const char *band_name(band_label label);

enum class body_region
{
    heart,
    stomach,
    kidneys,
    intestine,
    whole_torso,
};

body_region region_from_string(const std::string &text);
const char *region_name(body_region reg);

// A measurement or model context. Records always carry a region; the
// direction label (antenna placement sector around the torso) is optional
// and free-form so parameter files can define their own sector names.
// Parameter lookups are keyed by either region or direction, never both.
struct anatomical_context
{
    body_region region = body_region::whole_torso;
    std::string direction; // lower-case label, empty when unspecified
};

// Depth-binned variance of the dB-scale shadowing term.
struct shadowing_profile
{
    enum class interp
    {
        nearest_bin,
        linear_in_variance,
    };

    struct bin
    {
        double depth_mm;
        double variance_db2;
    };

    std::vector<bin> bins; // depths strictly increasing
    interp interpolation = interp::linear_in_variance;

    // Variance at a depth. Depths beyond the binned range clamp to the
    // nearest end bin. Throws empty_profile when no bins are present.
    double variance_at(double depth_mm) const;
    double sigma_at(double depth_mm) const;

    // Single-sigma profile covering the whole validity range.
    static shadowing_profile constant_sigma(double sigma_db);
};

// Log-distance mean path loss model: PL(d) = pl0_db + m_db * (d / d0_mm),
// valid for depths of 10 mm to 100 mm.
struct path_loss_params
{
    double pl0_db = 0.0;       // intercept at depth 0 extrapolation
    double m_db = 0.0;         // decay per reference depth
    double d0_mm = 10.0;       // reference depth
    double depth_min_mm = 10.0;
    double depth_max_mm = 100.0;
    frequency_band band;
    anatomical_context context;
};

struct antenna_params
{
    double gain_linear = 1.0;
    double reflection_coeff_mag = 0.0; // |S11| resp. |S22|, in [0, 1]
};

struct link_budget_result
{
    double in_body_pl_db = 0.0;
    double external_pl_db = 0.0;
    double total_pl_db = 0.0;
    double rx_power_dbm = 0.0;
    double margin_db = 0.0;
    double shadowing_sigma_db = 0.0;
};

// Mean path loss in dB at a tissue depth in mm.
// Throws depth_out_of_range outside the model validity range.
double mean_path_loss(const path_loss_params &params, double depth_mm);

// Mean path loss plus one zero-mean Gaussian shadowing draw with variance
// taken from the profile at this depth. A zero-variance depth returns the
// mean exactly and consumes no randomness.
double sample_path_loss(const path_loss_params &params, const shadowing_profile &profile,
                        double depth_mm, rng &gen);

// Free-space received power with antenna gain and mismatch factors:
// Pr = Pt * Gt * (1 - |S11|^2) * Gr * (1 - |S22|^2) * (lambda / (4 pi R))^2
double friis_received_power(double pt_w, const antenna_params &tx, const antenna_params &rx,
                            double wavelength_m, double distance_m);

// Loss of the external free-space segment in dB (the Friis gain factor
// excluding Pt, negated). A zero distance means no external segment and
// contributes 0 dB.
double external_path_loss_db(const antenna_params &tx, const antenna_params &rx,
                             double wavelength_m, double distance_m);

// Two concatenated segments: in-body loss from the statistical model plus
// an external free-space hop at the band carrier wavelength. Pass gen as
// nullptr (or use_shadowing = false) for the deterministic mean budget.
link_budget_result concatenated_link_budget(const path_loss_params &params,
                                            const shadowing_profile &profile, double depth_mm,
                                            double external_distance_m, double pt_dbm,
                                            const antenna_params &tx, const antenna_params &rx,
                                            double sensitivity_dbm, bool use_shadowing, rng *gen);

// P(PL > max_pl_db) under the Gaussian shadowing model; with zero variance
// this is a step function (1 if the mean exceeds the budget, else 0).
double outage_probability(const path_loss_params &params, const shadowing_profile &profile,
                          double depth_mm, double max_pl_db);

// Transmit power needed to close a link: sensitivity + total loss + margin.
double required_tx_power_dbm(double total_pl_db, double sensitivity_dbm, double margin_db);

// Gaussian tail probability Q(x) = P(Z > x) for standard normal Z.
double q_function(double x);

} // namespace ivchan

#endif
