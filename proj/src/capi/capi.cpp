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

#include "ivchan/ivchan.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "../core/csv_ingest.hpp"
#include "../core/errors.hpp"
#include "../core/estimation.hpp"
#include "../core/montecarlo.hpp"
#include "../core/multipath.hpp"
#include "../core/param_registry.hpp"
#include "../core/path_loss.hpp"
#include "../core/report.hpp"
#include "../core/touchstone.hpp"
#include "../core/units.hpp"

// The C status codes are the ABI face of the internal error enum.
static_assert(int(ivchan::errc::ok) == IVCHAN_OK);
static_assert(int(ivchan::errc::invalid_argument) == IVCHAN_E_INVALID_ARGUMENT);
static_assert(int(ivchan::errc::depth_out_of_range) == IVCHAN_E_DEPTH_OUT_OF_RANGE);
static_assert(int(ivchan::errc::empty_profile) == IVCHAN_E_EMPTY_PROFILE);
static_assert(int(ivchan::errc::non_positive_distance) == IVCHAN_E_NON_POSITIVE_DISTANCE);
static_assert(int(ivchan::errc::empty_response) == IVCHAN_E_EMPTY_RESPONSE);
static_assert(int(ivchan::errc::zero_magnitude_sample) == IVCHAN_E_ZERO_MAGNITUDE_SAMPLE);
static_assert(int(ivchan::errc::all_taps_below_floor) == IVCHAN_E_ALL_TAPS_BELOW_FLOOR);
static_assert(int(ivchan::errc::zero_total_power) == IVCHAN_E_ZERO_TOTAL_POWER);
static_assert(int(ivchan::errc::non_positive_delay_spread) == IVCHAN_E_NON_POSITIVE_DELAY_SPREAD);
static_assert(int(ivchan::errc::insufficient_data) == IVCHAN_E_INSUFFICIENT_DATA);
static_assert(int(ivchan::errc::degenerate_depths) == IVCHAN_E_DEGENERATE_DEPTHS);
static_assert(int(ivchan::errc::zero_slope_denominator) == IVCHAN_E_ZERO_SLOPE_DENOMINATOR);
static_assert(int(ivchan::errc::malformed_option_line) == IVCHAN_E_MALFORMED_OPTION_LINE);
static_assert(int(ivchan::errc::non_monotonic_frequency) == IVCHAN_E_NON_MONOTONIC_FREQUENCY);
static_assert(int(ivchan::errc::non_uniform_grid) == IVCHAN_E_NON_UNIFORM_GRID);
static_assert(int(ivchan::errc::row_arity) == IVCHAN_E_ROW_ARITY);
static_assert(int(ivchan::errc::missing_column) == IVCHAN_E_MISSING_COLUMN);
static_assert(int(ivchan::errc::value_out_of_range) == IVCHAN_E_VALUE_OUT_OF_RANGE);
static_assert(int(ivchan::errc::empty_file) == IVCHAN_E_EMPTY_FILE);
static_assert(int(ivchan::errc::duplicate_key) == IVCHAN_E_DUPLICATE_KEY);
static_assert(int(ivchan::errc::missing_required_field) == IVCHAN_E_MISSING_REQUIRED_FIELD);
static_assert(int(ivchan::errc::unknown_context) == IVCHAN_E_UNKNOWN_CONTEXT);
static_assert(int(ivchan::errc::unsupported_version) == IVCHAN_E_UNSUPPORTED_VERSION);
static_assert(int(ivchan::errc::parse) == IVCHAN_E_PARSE);
static_assert(int(ivchan::errc::io) == IVCHAN_E_IO);
static_assert(int(ivchan::errc::internal) == IVCHAN_E_INTERNAL);

#ifndef IVCHAN_VERSION_STRING
#define IVCHAN_VERSION_STRING "0.0.0"
#endif

namespace
{

thread_local std::string t_last_error;

template <typename Fn> int guarded(Fn &&fn)
{
    try
    {
        fn();
        return IVCHAN_OK;
    }
    catch (const ivchan::error &e)
    {
        t_last_error = e.what();
        return int(e.code());
    }
    catch (const std::bad_alloc &)
    {
        t_last_error = "out of memory";
        return IVCHAN_E_INTERNAL;
    }
    catch (const std::exception &e)
    {
        t_last_error = e.what();
        return IVCHAN_E_INTERNAL;
    }
}

int arg_error(const char *message)
{
    t_last_error = message;
    return IVCHAN_E_INVALID_ARGUMENT;
}

ivchan::frequency_band band_from_int(int band)
{
    if (band == IVCHAN_BAND_915MHZ)
        return ivchan::frequency_band::ism915();
    if (band == IVCHAN_BAND_2400MHZ)
        return ivchan::frequency_band::ism2400();
    ivchan::fail(ivchan::errc::invalid_argument, "band must be IVCHAN_BAND_915MHZ or IVCHAN_BAND_2400MHZ");
}

ivchan::antenna_params antenna_from(const ivchan_antenna *a)
{
    if (a == nullptr)
        return {};
    return {a->gain_linear, a->reflection_coeff_mag};
}

std::string read_file(const char *path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        ivchan::fail(ivchan::errc::io, std::string("cannot open '") + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

char *dup_string(const std::string &text)
{
    char *out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

} // namespace

struct ivchan_model
{
    ivchan::path_loss_params params;
    ivchan::shadowing_profile profile;
};

struct ivchan_registry
{
    ivchan::param_registry reg;
};

struct ivchan_freq_response
{
    ivchan::frequency_response fr;
};

struct ivchan_impulse
{
    ivchan::impulse_response ir;
};

struct ivchan_pdp
{
    ivchan::power_delay_profile pdp;
};

struct ivchan_dataset
{
    ivchan::csv_result result;
};

struct ivchan_fits
{
    std::vector<ivchan::fit_result> fits;
};

struct ivchan_means
{
    struct row
    {
        std::string group_key;
        double depth_mm;
        double mean_pl_db;
        std::uint64_t count;
    };
    std::vector<row> rows;
};

struct ivchan_report
{
    ivchan::report rep;
    nlohmann::ordered_json *current = nullptr;

    explicit ivchan_report(const char *subcommand)
        : rep("ivchan", IVCHAN_VERSION_STRING, subcommand)
    {
    }
};

extern "C"
{

const char *ivchan_version(void)
{
    return IVCHAN_VERSION_STRING;
}

const char *ivchan_strerror(int code)
{
    return ivchan::errc_name(ivchan::errc(code));
}

const char *ivchan_last_error(void)
{
    return t_last_error.c_str();
}

void ivchan_string_free(char *text)
{
    delete[] text;
}

double ivchan_wavelength_m(double frequency_hz)
{
    return ivchan::wavelength_m(frequency_hz);
}

double ivchan_q_function(double x)
{
    return ivchan::q_function(x);
}

/* ---- model ---------------------------------------------------------- */

static int model_create_common(const ivchan_pl_model *params, ivchan::shadowing_profile profile,
                               ivchan_model **out)
{
    if (params == nullptr || out == nullptr)
        return arg_error("params and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        ivchan::path_loss_params p;
        p.pl0_db = params->pl0_db;
        p.m_db = params->m_db;
        p.d0_mm = params->d0_mm;
        p.depth_min_mm = params->depth_min_mm;
        p.depth_max_mm = params->depth_max_mm;
        p.band = band_from_int(params->band);
        if (!(p.d0_mm > 0.0))
            ivchan::fail(ivchan::errc::invalid_argument, "reference depth d0_mm must be > 0");
        if (!(p.m_db > 0.0))
            ivchan::fail(ivchan::errc::invalid_argument, "decay rate m_db must be > 0");
        if (!(p.depth_min_mm < p.depth_max_mm))
            ivchan::fail(ivchan::errc::invalid_argument, "depth range must satisfy min < max");
        *out = new ivchan_model{p, std::move(profile)};
    });
}

int ivchan_model_create(const ivchan_pl_model *params, double sigma_db, ivchan_model **out)
{
    if (!(sigma_db >= 0.0))
        return arg_error("sigma_db must be >= 0");
    return model_create_common(params, ivchan::shadowing_profile::constant_sigma(sigma_db), out);
}

int ivchan_model_create_with_table(const ivchan_pl_model *params, const double *depths_mm,
                                   const double *variances_db2, size_t n_bins, ivchan_model **out)
{
    if (depths_mm == nullptr || variances_db2 == nullptr || n_bins == 0)
        return arg_error("variance table must have at least one bin");
    ivchan::shadowing_profile profile;
    for (size_t i = 0; i < n_bins; i++)
    {
        if (i > 0 && !(depths_mm[i] > depths_mm[i - 1]))
            return arg_error("table depths must be strictly increasing");
        if (!(variances_db2[i] >= 0.0))
            return arg_error("table variances must be >= 0");
        profile.bins.push_back({depths_mm[i], variances_db2[i]});
    }
    return model_create_common(params, std::move(profile), out);
}

void ivchan_model_free(ivchan_model *model)
{
    delete model;
}

int ivchan_model_params(const ivchan_model *model, ivchan_pl_model *out)
{
    if (model == nullptr || out == nullptr)
        return arg_error("model and out must not be NULL");
    out->pl0_db = model->params.pl0_db;
    out->m_db = model->params.m_db;
    out->d0_mm = model->params.d0_mm;
    out->depth_min_mm = model->params.depth_min_mm;
    out->depth_max_mm = model->params.depth_max_mm;
    out->band = model->params.band.label == ivchan::band_label::ism915 ? IVCHAN_BAND_915MHZ
                                                                       : IVCHAN_BAND_2400MHZ;
    return IVCHAN_OK;
}

int ivchan_model_mean_pl(const ivchan_model *model, double depth_mm, double *out_db)
{
    if (model == nullptr || out_db == nullptr)
        return arg_error("model and out must not be NULL");
    return guarded([&] { *out_db = ivchan::mean_path_loss(model->params, depth_mm); });
}

int ivchan_model_sigma(const ivchan_model *model, double depth_mm, double *out_sigma_db)
{
    if (model == nullptr || out_sigma_db == nullptr)
        return arg_error("model and out must not be NULL");
    return guarded([&] { *out_sigma_db = model->profile.sigma_at(depth_mm); });
}

int ivchan_model_sample_pl(const ivchan_model *model, double depth_mm, uint64_t seed, size_t n,
                           double *out_db)
{
    if (model == nullptr || out_db == nullptr)
        return arg_error("model and out must not be NULL");
    if (n == 0)
        return arg_error("sample count must be >= 1");
    return guarded([&] {
        for (size_t i = 0; i < n; i++)
        {
            ivchan::rng gen = ivchan::rng::for_trial(seed, i);
            out_db[i] = ivchan::sample_path_loss(model->params, model->profile, depth_mm, gen);
        }
    });
}

int ivchan_model_outage(const ivchan_model *model, double depth_mm, double max_pl_db,
                        double *out_probability)
{
    if (model == nullptr || out_probability == nullptr)
        return arg_error("model and out must not be NULL");
    return guarded([&] {
        *out_probability =
            ivchan::outage_probability(model->params, model->profile, depth_mm, max_pl_db);
    });
}

int ivchan_model_link_budget(const ivchan_model *model, double depth_mm,
                             double external_distance_m, double pt_dbm, const ivchan_antenna *tx,
                             const ivchan_antenna *rx, double sensitivity_dbm, int use_shadowing,
                             uint64_t seed, ivchan_link_budget *out)
{
    if (model == nullptr || out == nullptr)
        return arg_error("model and out must not be NULL");
    return guarded([&] {
        ivchan::rng gen = ivchan::rng::for_trial(seed, 0);
        ivchan::link_budget_result r = ivchan::concatenated_link_budget(
            model->params, model->profile, depth_mm, external_distance_m, pt_dbm,
            antenna_from(tx), antenna_from(rx), sensitivity_dbm, use_shadowing != 0, &gen);
        out->in_body_pl_db = r.in_body_pl_db;
        out->external_pl_db = r.external_pl_db;
        out->total_pl_db = r.total_pl_db;
        out->rx_power_dbm = r.rx_power_dbm;
        out->margin_db = r.margin_db;
        out->shadowing_sigma_db = r.shadowing_sigma_db;
    });
}

int ivchan_model_monte_carlo(const ivchan_model *model, double depth_mm, uint64_t n_trials,
                             uint64_t seed, double threshold_db, unsigned workers,
                             ivchan_mc_summary *out)
{
    if (model == nullptr || out == nullptr)
        return arg_error("model and out must not be NULL");
    return guarded([&] {
        ivchan::mc_summary s =
            ivchan::run_monte_carlo(model->params, model->profile, depth_mm,
                                    std::size_t(n_trials), seed, threshold_db, workers);
        out->n_trials = s.n_trials;
        out->seed = s.seed;
        out->threshold_db = s.threshold_db;
        out->mean_pl_db = s.mean_pl_db;
        out->variance_db2 = s.variance_db2;
        out->min_pl_db = s.min_pl_db;
        out->max_pl_db = s.max_pl_db;
        out->outage_rate = s.outage_rate;
    });
}

/* ---- free-space pieces ----------------------------------------------- */

int ivchan_friis_received_power(double pt_w, const ivchan_antenna *tx, const ivchan_antenna *rx,
                                double wavelength_m, double distance_m, double *out_w)
{
    if (out_w == nullptr)
        return arg_error("out must not be NULL");
    return guarded([&] {
        *out_w = ivchan::friis_received_power(pt_w, antenna_from(tx), antenna_from(rx),
                                              wavelength_m, distance_m);
    });
}

int ivchan_external_path_loss_db(const ivchan_antenna *tx, const ivchan_antenna *rx,
                                 double wavelength_m, double distance_m, double *out_db)
{
    if (out_db == nullptr)
        return arg_error("out must not be NULL");
    return guarded([&] {
        *out_db = ivchan::external_path_loss_db(antenna_from(tx), antenna_from(rx), wavelength_m,
                                                distance_m);
    });
}

int ivchan_required_tx_power_dbm(double total_pl_db, double sensitivity_dbm, double margin_db,
                                 double *out_dbm)
{
    if (out_dbm == nullptr)
        return arg_error("out must not be NULL");
    *out_dbm = ivchan::required_tx_power_dbm(total_pl_db, sensitivity_dbm, margin_db);
    return IVCHAN_OK;
}

/* ---- registry --------------------------------------------------------- */

int ivchan_registry_open(const char *path, ivchan_registry **out)
{
    if (path == nullptr || out == nullptr)
        return arg_error("path and out must not be NULL");
    *out = nullptr;
    return guarded([&] { *out = new ivchan_registry{ivchan::param_registry::load_file(path)}; });
}

int ivchan_registry_parse(const char *text, ivchan_registry **out)
{
    if (text == nullptr || out == nullptr)
        return arg_error("text and out must not be NULL");
    *out = nullptr;
    return guarded([&] { *out = new ivchan_registry{ivchan::param_registry::parse(text)}; });
}

void ivchan_registry_free(ivchan_registry *registry)
{
    delete registry;
}

size_t ivchan_registry_size(const ivchan_registry *registry)
{
    return registry == nullptr ? 0 : registry->reg.size();
}

int ivchan_registry_key(const ivchan_registry *registry, size_t index, const char **out_key)
{
    if (registry == nullptr || out_key == nullptr)
        return arg_error("registry and out must not be NULL");
    if (index >= registry->reg.size())
        return arg_error("registry index out of range");
    *out_key = registry->reg.entries()[index].key.c_str();
    return IVCHAN_OK;
}

int ivchan_registry_model(const ivchan_registry *registry, const char *band, const char *context,
                          ivchan_model **out)
{
    if (registry == nullptr || band == nullptr || context == nullptr || out == nullptr)
        return arg_error("registry, band, context and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        ivchan::frequency_band b = ivchan::band_from_string(band);
        const ivchan::param_entry &entry = registry->reg.lookup(b, context);
        *out = new ivchan_model{entry.params, entry.profile};
    });
}

/* ---- frequency response / multipath ------------------------------------ */

int ivchan_fr_from_touchstone(const char *path, ivchan_freq_response **out)
{
    if (path == nullptr || out == nullptr)
        return arg_error("path and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        ivchan::touchstone_sweep sweep = ivchan::parse_touchstone(read_file(path));
        *out = new ivchan_freq_response{sweep.s21()};
    });
}

int ivchan_fr_parse_touchstone(const char *text, ivchan_freq_response **out)
{
    if (text == nullptr || out == nullptr)
        return arg_error("text and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        ivchan::touchstone_sweep sweep = ivchan::parse_touchstone(text);
        *out = new ivchan_freq_response{sweep.s21()};
    });
}

int ivchan_fr_synthesize(const double *delays_s, const double *gains_re, const double *gains_im,
                         size_t n_taps, double f_start_hz, double f_step_hz, size_t n_points,
                         ivchan_freq_response **out)
{
    if (out == nullptr)
        return arg_error("out must not be NULL");
    if (n_taps > 0 && (delays_s == nullptr || gains_re == nullptr || gains_im == nullptr))
        return arg_error("tap arrays must not be NULL");
    if (n_points > size_t(std::numeric_limits<int>::max()))
        return arg_error("n_points too large");
    *out = nullptr;
    return guarded([&] {
        std::vector<std::pair<double, std::complex<double>>> taps;
        taps.reserve(n_taps);
        for (size_t i = 0; i < n_taps; i++)
            taps.emplace_back(delays_s[i], std::complex<double>(gains_re[i], gains_im[i]));
        *out = new ivchan_freq_response{
            ivchan::synthesize_frequency_response(taps, f_start_hz, f_step_hz, int(n_points))};
    });
}

void ivchan_fr_free(ivchan_freq_response *fr)
{
    delete fr;
}

int ivchan_fr_size(const ivchan_freq_response *fr, size_t *out)
{
    if (fr == nullptr || out == nullptr)
        return arg_error("fr and out must not be NULL");
    *out = fr->fr.samples.size();
    return IVCHAN_OK;
}

int ivchan_fr_grid(const ivchan_freq_response *fr, double *out_f_start_hz, double *out_f_step_hz)
{
    if (fr == nullptr || out_f_start_hz == nullptr || out_f_step_hz == nullptr)
        return arg_error("fr and outs must not be NULL");
    *out_f_start_hz = fr->fr.f_start_hz;
    *out_f_step_hz = fr->fr.f_step_hz;
    return IVCHAN_OK;
}

int ivchan_fr_path_loss(const ivchan_freq_response *fr, double *out_db)
{
    if (fr == nullptr || out_db == nullptr)
        return arg_error("fr and out must not be NULL");
    return guarded([&] { *out_db = ivchan::path_loss_from_s21(fr->fr); });
}

int ivchan_impulse_compute(const ivchan_freq_response *fr, int window, int zero_pad_factor,
                           ivchan_impulse **out)
{
    if (fr == nullptr || out == nullptr)
        return arg_error("fr and out must not be NULL");
    if (window != IVCHAN_WINDOW_RECTANGULAR && window != IVCHAN_WINDOW_HANN)
        return arg_error("window must be IVCHAN_WINDOW_RECTANGULAR or IVCHAN_WINDOW_HANN");
    *out = nullptr;
    return guarded([&] {
        ivchan::window_kind kind = window == IVCHAN_WINDOW_HANN ? ivchan::window_kind::hann
                                                                : ivchan::window_kind::rectangular;
        *out = new ivchan_impulse{ivchan::compute_impulse_response(fr->fr, kind, zero_pad_factor)};
    });
}

void ivchan_impulse_free(ivchan_impulse *ir)
{
    delete ir;
}

int ivchan_impulse_size(const ivchan_impulse *ir, size_t *out)
{
    if (ir == nullptr || out == nullptr)
        return arg_error("ir and out must not be NULL");
    *out = ir->ir.taps.size();
    return IVCHAN_OK;
}

int ivchan_impulse_t_step(const ivchan_impulse *ir, double *out_s)
{
    if (ir == nullptr || out_s == nullptr)
        return arg_error("ir and out must not be NULL");
    *out_s = ir->ir.t_step_s;
    return IVCHAN_OK;
}

int ivchan_pdp_compute(const ivchan_impulse *ir, double noise_floor_db, ivchan_pdp **out)
{
    if (ir == nullptr || out == nullptr)
        return arg_error("ir and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        *out = new ivchan_pdp{ivchan::compute_power_delay_profile(ir->ir, noise_floor_db)};
    });
}

int ivchan_pdp_create(const double *delays_s, const double *powers, size_t n, ivchan_pdp **out)
{
    if (delays_s == nullptr || powers == nullptr || out == nullptr)
        return arg_error("delays, powers and out must not be NULL");
    if (n == 0)
        return arg_error("profile needs at least one tap");
    *out = nullptr;
    ivchan::power_delay_profile pdp;
    double total = 0.0;
    for (size_t i = 0; i < n; i++)
    {
        if (!(delays_s[i] >= 0.0))
            return arg_error("delays must be >= 0");
        if (i > 0 && !(delays_s[i] > delays_s[i - 1]))
            return arg_error("delays must be strictly increasing");
        if (!(powers[i] >= 0.0))
            return arg_error("powers must be >= 0");
        pdp.entries.push_back({delays_s[i], powers[i]});
        total += powers[i];
    }
    pdp.normalized = total != 0.0 && std::abs(total - 1.0) <= 1e-9;
    *out = new ivchan_pdp{std::move(pdp)};
    return IVCHAN_OK;
}

void ivchan_pdp_free(ivchan_pdp *pdp)
{
    delete pdp;
}

int ivchan_pdp_size(const ivchan_pdp *pdp, size_t *out)
{
    if (pdp == nullptr || out == nullptr)
        return arg_error("pdp and out must not be NULL");
    *out = pdp->pdp.entries.size();
    return IVCHAN_OK;
}

int ivchan_pdp_entry(const ivchan_pdp *pdp, size_t index, double *out_delay_s, double *out_power)
{
    if (pdp == nullptr || out_delay_s == nullptr || out_power == nullptr)
        return arg_error("pdp and outs must not be NULL");
    if (index >= pdp->pdp.entries.size())
        return arg_error("profile index out of range");
    *out_delay_s = pdp->pdp.entries[index].delay_s;
    *out_power = pdp->pdp.entries[index].power;
    return IVCHAN_OK;
}

int ivchan_pdp_stats(const ivchan_pdp *pdp, ivchan_multipath_stats *out)
{
    if (pdp == nullptr || out == nullptr)
        return arg_error("pdp and out must not be NULL");
    return guarded([&] {
        ivchan::multipath_stats s = ivchan::stats_from_pdp(pdp->pdp);
        out->mean_excess_delay_s = s.mean_excess_delay_s;
        out->rms_delay_spread_s = s.rms_delay_spread_s;
        out->coherence_bw_hz = s.coherence_bw_hz;
        out->bc_valid = s.bc_valid ? 1 : 0;
    });
}

int ivchan_coherence_bandwidth(double sigma_tau_s, double *out_hz)
{
    if (out_hz == nullptr)
        return arg_error("out must not be NULL");
    return guarded([&] { *out_hz = ivchan::coherence_bandwidth(sigma_tau_s); });
}

int ivchan_classify_channel(double signal_bw_hz, double bc_hz, int *out_is_flat)
{
    if (out_is_flat == nullptr)
        return arg_error("out must not be NULL");
    return guarded([&] {
        *out_is_flat =
            ivchan::classify_channel(signal_bw_hz, bc_hz) == ivchan::channel_kind::flat ? 1 : 0;
    });
}

/* ---- datasets and fitting ----------------------------------------------- */

int ivchan_dataset_from_csv(const char *path, int strict, ivchan_dataset **out)
{
    if (path == nullptr || out == nullptr)
        return arg_error("path and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        ivchan::csv_result r =
            ivchan::parse_csv_measurements(read_file(path), ivchan::csv_schema{}, strict != 0);
        r.dataset.provenance_file = path;
        *out = new ivchan_dataset{std::move(r)};
    });
}

int ivchan_dataset_parse_csv(const char *text, int strict, ivchan_dataset **out)
{
    if (text == nullptr || out == nullptr)
        return arg_error("text and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        *out = new ivchan_dataset{
            ivchan::parse_csv_measurements(text, ivchan::csv_schema{}, strict != 0)};
    });
}

void ivchan_dataset_free(ivchan_dataset *dataset)
{
    delete dataset;
}

size_t ivchan_dataset_size(const ivchan_dataset *dataset)
{
    return dataset == nullptr ? 0 : dataset->result.dataset.records.size();
}

size_t ivchan_dataset_skipped(const ivchan_dataset *dataset)
{
    return dataset == nullptr ? 0 : dataset->result.skipped.size();
}

int ivchan_dataset_skip_reason(const ivchan_dataset *dataset, size_t index, uint64_t *out_line,
                               const char **out_reason)
{
    if (dataset == nullptr || out_line == nullptr || out_reason == nullptr)
        return arg_error("dataset and outs must not be NULL");
    if (index >= dataset->result.skipped.size())
        return arg_error("skip index out of range");
    *out_line = dataset->result.skipped[index].line;
    *out_reason = dataset->result.skipped[index].reason.c_str();
    return IVCHAN_OK;
}

int ivchan_fit_path_loss(const ivchan_dataset *dataset, const char *grouping, ivchan_fits **out)
{
    if (dataset == nullptr || grouping == nullptr || out == nullptr)
        return arg_error("dataset, grouping and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        *out = new ivchan_fits{
            ivchan::fit_path_loss(dataset->result.dataset, ivchan::grouping_by_name(grouping))};
    });
}

void ivchan_fits_free(ivchan_fits *fits)
{
    delete fits;
}

size_t ivchan_fits_size(const ivchan_fits *fits)
{
    return fits == nullptr ? 0 : fits->fits.size();
}

int ivchan_fits_get(const ivchan_fits *fits, size_t index, ivchan_fit *out)
{
    if (fits == nullptr || out == nullptr)
        return arg_error("fits and out must not be NULL");
    if (index >= fits->fits.size())
        return arg_error("fit index out of range");
    const ivchan::fit_result &f = fits->fits[index];
    out->pl0_db = f.pl0_db;
    out->m_db = f.m_db;
    out->d0_mm = f.d0_mm;
    out->r_squared = f.r_squared;
    out->n_samples = f.n_samples;
    return IVCHAN_OK;
}

int ivchan_fits_key(const ivchan_fits *fits, size_t index, const char **out_key)
{
    if (fits == nullptr || out_key == nullptr)
        return arg_error("fits and out must not be NULL");
    if (index >= fits->fits.size())
        return arg_error("fit index out of range");
    *out_key = fits->fits[index].group_key.c_str();
    return IVCHAN_OK;
}

int ivchan_fits_residual_bin_count(const ivchan_fits *fits, size_t index, size_t *out_n)
{
    if (fits == nullptr || out_n == nullptr)
        return arg_error("fits and out must not be NULL");
    if (index >= fits->fits.size())
        return arg_error("fit index out of range");
    *out_n = fits->fits[index].residual_profile.bins.size();
    return IVCHAN_OK;
}

int ivchan_fits_residual_bin(const ivchan_fits *fits, size_t index, size_t bin,
                             double *out_depth_mm, double *out_variance_db2)
{
    if (fits == nullptr || out_depth_mm == nullptr || out_variance_db2 == nullptr)
        return arg_error("fits and outs must not be NULL");
    if (index >= fits->fits.size())
        return arg_error("fit index out of range");
    const auto &bins = fits->fits[index].residual_profile.bins;
    if (bin >= bins.size())
        return arg_error("bin index out of range");
    *out_depth_mm = bins[bin].depth_mm;
    *out_variance_db2 = bins[bin].variance_db2;
    return IVCHAN_OK;
}

int ivchan_fits_warning_count(const ivchan_fits *fits, size_t index, size_t *out_n)
{
    if (fits == nullptr || out_n == nullptr)
        return arg_error("fits and out must not be NULL");
    if (index >= fits->fits.size())
        return arg_error("fit index out of range");
    *out_n = fits->fits[index].warnings.size();
    return IVCHAN_OK;
}

int ivchan_fits_warning(const ivchan_fits *fits, size_t index, size_t w, const char **out_text)
{
    if (fits == nullptr || out_text == nullptr)
        return arg_error("fits and out must not be NULL");
    if (index >= fits->fits.size())
        return arg_error("fit index out of range");
    if (w >= fits->fits[index].warnings.size())
        return arg_error("warning index out of range");
    *out_text = fits->fits[index].warnings[w].c_str();
    return IVCHAN_OK;
}

int ivchan_compare_fits(const ivchan_fit *fit_a, const ivchan_fit *fit_b, double *out_ratio,
                        double *out_delta_pl0_db)
{
    if (fit_a == nullptr || fit_b == nullptr || out_ratio == nullptr ||
        out_delta_pl0_db == nullptr)
        return arg_error("fits and outs must not be NULL");
    return guarded([&] {
        ivchan::fit_result a, b;
        a.pl0_db = fit_a->pl0_db;
        a.m_db = fit_a->m_db;
        a.d0_mm = fit_a->d0_mm;
        b.pl0_db = fit_b->pl0_db;
        b.m_db = fit_b->m_db;
        b.d0_mm = fit_b->d0_mm;
        ivchan::comparison_report r = ivchan::compare_models(a, b);
        *out_ratio = r.decay_rate_ratio;
        *out_delta_pl0_db = r.delta_pl0_db;
    });
}

int ivchan_mean_pl_by_depth(const ivchan_dataset *dataset, const char *grouping,
                            ivchan_means **out)
{
    if (dataset == nullptr || grouping == nullptr || out == nullptr)
        return arg_error("dataset, grouping and out must not be NULL");
    *out = nullptr;
    return guarded([&] {
        auto groups = ivchan::empirical_mean_pl_by_depth(dataset->result.dataset,
                                                         ivchan::grouping_by_name(grouping));
        auto *means = new ivchan_means;
        for (const auto &g : groups)
            for (const auto &row : g.rows)
                means->rows.push_back({g.group_key, row.depth_mm, row.mean_pl_db, row.count});
        *out = means;
    });
}

void ivchan_means_free(ivchan_means *means)
{
    delete means;
}

size_t ivchan_means_size(const ivchan_means *means)
{
    return means == nullptr ? 0 : means->rows.size();
}

int ivchan_means_row(const ivchan_means *means, size_t row, const char **out_group_key,
                     double *out_depth_mm, double *out_mean_pl_db, uint64_t *out_count)
{
    if (means == nullptr || out_group_key == nullptr || out_depth_mm == nullptr ||
        out_mean_pl_db == nullptr || out_count == nullptr)
        return arg_error("means and outs must not be NULL");
    if (row >= means->rows.size())
        return arg_error("row index out of range");
    const auto &r = means->rows[row];
    *out_group_key = r.group_key.c_str();
    *out_depth_mm = r.depth_mm;
    *out_mean_pl_db = r.mean_pl_db;
    *out_count = r.count;
    return IVCHAN_OK;
}

/* ---- report builder ------------------------------------------------------ */

int ivchan_report_create(const char *subcommand, ivchan_report **out)
{
    if (subcommand == nullptr || out == nullptr)
        return arg_error("subcommand and out must not be NULL");
    *out = nullptr;
    return guarded([&] { *out = new ivchan_report(subcommand); });
}

void ivchan_report_free(ivchan_report *report)
{
    delete report;
}

int ivchan_report_run_str(ivchan_report *report, const char *key, const char *value)
{
    if (report == nullptr || key == nullptr || value == nullptr)
        return arg_error("report, key and value must not be NULL");
    report->rep.run()[key] = value;
    return IVCHAN_OK;
}

int ivchan_report_run_num(ivchan_report *report, const char *key, double value)
{
    if (report == nullptr || key == nullptr)
        return arg_error("report and key must not be NULL");
    report->rep.run()[key] = value;
    return IVCHAN_OK;
}

int ivchan_report_run_uint(ivchan_report *report, const char *key, uint64_t value)
{
    if (report == nullptr || key == nullptr)
        return arg_error("report and key must not be NULL");
    report->rep.run()[key] = value;
    return IVCHAN_OK;
}

int ivchan_report_begin_record(ivchan_report *report)
{
    if (report == nullptr)
        return arg_error("report must not be NULL");
    report->current = &report->rep.add_record();
    return IVCHAN_OK;
}

static int record_set(ivchan_report *report, const char *key, nlohmann::ordered_json value)
{
    if (report == nullptr || key == nullptr)
        return arg_error("report and key must not be NULL");
    if (report->current == nullptr)
        return arg_error("no record begun; call ivchan_report_begin_record first");
    (*report->current)[key] = std::move(value);
    return IVCHAN_OK;
}

int ivchan_report_str(ivchan_report *report, const char *key, const char *value)
{
    if (value == nullptr)
        return arg_error("value must not be NULL");
    return record_set(report, key, value);
}

int ivchan_report_num(ivchan_report *report, const char *key, double value)
{
    return record_set(report, key, value);
}

int ivchan_report_int(ivchan_report *report, const char *key, int64_t value)
{
    return record_set(report, key, value);
}

int ivchan_report_uint(ivchan_report *report, const char *key, uint64_t value)
{
    return record_set(report, key, value);
}

int ivchan_report_bool(ivchan_report *report, const char *key, int value)
{
    return record_set(report, key, value != 0);
}

int ivchan_report_warning(ivchan_report *report, const char *text)
{
    if (report == nullptr || text == nullptr)
        return arg_error("report and text must not be NULL");
    report->rep.add_warning(text);
    return IVCHAN_OK;
}

int ivchan_report_render(const ivchan_report *report, const char *format, char **out_text)
{
    if (report == nullptr || format == nullptr || out_text == nullptr)
        return arg_error("report, format and out must not be NULL");
    *out_text = nullptr;
    return guarded([&] {
        std::string text = report->rep.render(ivchan::report_format_from_string(format));
        *out_text = dup_string(text);
    });
}

} // extern "C"
