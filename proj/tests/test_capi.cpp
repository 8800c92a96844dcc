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
//
// End-to-end exercise of the shared-library C interface. This translation
// unit deliberately includes only the public header, never the C++ core.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include <ivchan/ivchan.h>

#ifndef IVCHAN_DATA_DIR
#define IVCHAN_DATA_DIR "data"
#endif

static ivchan_pl_model base_model()
{
    ivchan_pl_model m;
    m.pl0_db = 30.0;
    m.m_db = 4.0;
    m.d0_mm = 10.0;
    m.depth_min_mm = 10.0;
    m.depth_max_mm = 100.0;
    m.band = IVCHAN_BAND_915MHZ;
    return m;
}

TEST_CASE("library identity and error strings")
{
    CHECK(std::string(ivchan_version()) == "0.1.0");
    CHECK(std::string(ivchan_strerror(IVCHAN_OK)) == "ok");
    CHECK(ivchan_strerror(IVCHAN_E_DEPTH_OUT_OF_RANGE) != nullptr);
    CHECK(std::string(ivchan_strerror(IVCHAN_E_DEPTH_OUT_OF_RANGE)) !=
          std::string(ivchan_strerror(IVCHAN_E_PARSE)));
    CHECK(ivchan_last_error() != nullptr);
    ivchan_string_free(nullptr); // must be a no-op
}

TEST_CASE("numeric helpers")
{
    CHECK(std::abs(ivchan_wavelength_m(915e6) - 0.32764203060109287) < 1e-15);
    CHECK(std::abs(ivchan_q_function(0.0) - 0.5) < 1e-15);
    CHECK(std::abs(ivchan_q_function(1.0) - 0.15865525393145707) < 1e-13);
}

TEST_CASE("model lifecycle and predictions")
{
    ivchan_pl_model params = base_model();
    ivchan_model *model = nullptr;
    REQUIRE(ivchan_model_create(&params, 4.0, &model) == IVCHAN_OK);
    REQUIRE(model != nullptr);

    double mean = 0.0;
    CHECK(ivchan_model_mean_pl(model, 50.0, &mean) == IVCHAN_OK);
    CHECK(mean == 50.0);

    double sigma = 0.0;
    CHECK(ivchan_model_sigma(model, 50.0, &sigma) == IVCHAN_OK);
    CHECK(sigma == 4.0);

    ivchan_pl_model echoed;
    CHECK(ivchan_model_params(model, &echoed) == IVCHAN_OK);
    CHECK(echoed.pl0_db == 30.0);
    CHECK(echoed.band == IVCHAN_BAND_915MHZ);

    SUBCASE("depth range errors surface with a detail message")
    {
        double out = 0.0;
        CHECK(ivchan_model_mean_pl(model, 5.0, &out) == IVCHAN_E_DEPTH_OUT_OF_RANGE);
        CHECK(std::strlen(ivchan_last_error()) > 0);
        CHECK(ivchan_model_mean_pl(nullptr, 50.0, &out) == IVCHAN_E_INVALID_ARGUMENT);
        CHECK(ivchan_model_mean_pl(model, 50.0, nullptr) == IVCHAN_E_INVALID_ARGUMENT);
    }

    SUBCASE("sampling has the prefix property")
    {
        double eight[8], three[3];
        REQUIRE(ivchan_model_sample_pl(model, 50.0, 99, 8, eight) == IVCHAN_OK);
        REQUIRE(ivchan_model_sample_pl(model, 50.0, 99, 3, three) == IVCHAN_OK);
        for (int i = 0; i < 3; i++)
            CHECK(eight[i] == three[i]);
        double other[3];
        REQUIRE(ivchan_model_sample_pl(model, 50.0, 100, 3, other) == IVCHAN_OK);
        CHECK(other[0] != three[0]);
    }

    SUBCASE("closed-form outage")
    {
        double prob = 0.0;
        CHECK(ivchan_model_outage(model, 50.0, 50.0, &prob) == IVCHAN_OK);
        CHECK(prob == 0.5);
        CHECK(ivchan_model_outage(model, 50.0, 54.0, &prob) == IVCHAN_OK);
        CHECK(std::abs(prob - 0.15865525393145707) < 1e-12);
    }

    SUBCASE("Monte Carlo is worker-invariant")
    {
        ivchan_mc_summary one, four;
        REQUIRE(ivchan_model_monte_carlo(model, 50.0, 20011, 7, 52.0, 1, &one) == IVCHAN_OK);
        REQUIRE(ivchan_model_monte_carlo(model, 50.0, 20011, 7, 52.0, 4, &four) == IVCHAN_OK);
        CHECK(std::memcmp(&one, &four, sizeof one) == 0);
        CHECK(one.n_trials == 20011);
        CHECK(std::abs(one.mean_pl_db - 50.0) < 0.1);
    }

    ivchan_model_free(model);
    ivchan_model_free(nullptr);
}

TEST_CASE("link budget through the C interface")
{
    ivchan_pl_model params = base_model();
    ivchan_model *model = nullptr;
    REQUIRE(ivchan_model_create(&params, 0.0, &model) == IVCHAN_OK);

    ivchan_link_budget budget;
    REQUIRE(ivchan_model_link_budget(model, 50.0, 1.0, 0.0, nullptr, nullptr, -90.0, 0, 0,
                                     &budget) == IVCHAN_OK);
    CHECK(budget.in_body_pl_db == 50.0);
    CHECK(std::abs(budget.external_pl_db - 31.67620510321234) < 1e-12);
    CHECK(std::abs(budget.total_pl_db - 81.67620510321234) < 1e-12);
    CHECK(std::abs(budget.rx_power_dbm + 81.67620510321234) < 1e-12);
    CHECK(std::abs(budget.margin_db - 8.32379489678766) < 1e-12);

    double required = 0.0;
    CHECK(ivchan_required_tx_power_dbm(budget.total_pl_db, -90.0, 10.0, &required) == IVCHAN_OK);
    CHECK(std::abs(required - (budget.total_pl_db - 80.0)) < 1e-12);

    ivchan_model_free(model);
}

TEST_CASE("free-space helpers")
{
    ivchan_antenna ideal = {1.0, 0.0};
    double pr = 0.0;
    double lambda = ivchan_wavelength_m(915e6);
    double r0 = lambda / (4.0 * 3.14159265358979323846);
    REQUIRE(ivchan_friis_received_power(0.5, &ideal, &ideal, lambda, r0, &pr) == IVCHAN_OK);
    CHECK(std::abs(pr - 0.5) < 1e-12);
    CHECK(ivchan_friis_received_power(0.5, &ideal, &ideal, lambda, 0.0, &pr) ==
          IVCHAN_E_NON_POSITIVE_DISTANCE);

    double db = 0.0;
    REQUIRE(ivchan_external_path_loss_db(nullptr, nullptr, lambda, 1.0, &db) == IVCHAN_OK);
    CHECK(std::abs(db - 31.67620510321234) < 1e-12);
    REQUIRE(ivchan_external_path_loss_db(nullptr, nullptr, lambda, 0.0, &db) == IVCHAN_OK);
    CHECK(db == 0.0);
}

TEST_CASE("model with a variance table")
{
    ivchan_pl_model params = base_model();
    double depths[3] = {10.0, 20.0, 30.0};
    double variances[3] = {1.0, 3.0, 7.0};
    ivchan_model *model = nullptr;
    REQUIRE(ivchan_model_create_with_table(&params, depths, variances, 3, &model) == IVCHAN_OK);
    double sigma = 0.0;
    CHECK(ivchan_model_sigma(model, 15.0, &sigma) == IVCHAN_OK);
    CHECK(std::abs(sigma - std::sqrt(2.0)) < 1e-14);
    CHECK(ivchan_model_sigma(model, 95.0, &sigma) == IVCHAN_OK);
    CHECK(std::abs(sigma - std::sqrt(7.0)) < 1e-14);

    double backwards[3] = {30.0, 20.0, 10.0};
    ivchan_model *bad = nullptr;
    CHECK(ivchan_model_create_with_table(&params, backwards, variances, 3, &bad) ==
          IVCHAN_E_INVALID_ARGUMENT);
    CHECK(bad == nullptr);
    ivchan_model_free(model);
}

static const char *registry_text = "[band 915MHz region heart]\n"
                                   "pl0_db = 28.4\n"
                                   "m_db = 4.6\n"
                                   "sigma_db = 5.1\n"
                                   "\n"
                                   "[band 2.4GHz direction anterior]\n"
                                   "pl0_db = 33.8\n"
                                   "m_db = 9.9\n"
                                   "sigma_db = 6.2\n";

TEST_CASE("registry resolution")
{
    ivchan_registry *reg = nullptr;
    REQUIRE(ivchan_registry_parse(registry_text, &reg) == IVCHAN_OK);
    CHECK(ivchan_registry_size(reg) == 2);

    const char *key = nullptr;
    REQUIRE(ivchan_registry_key(reg, 0, &key) == IVCHAN_OK);
    CHECK(std::string(key) == "915MHz/region/heart");
    REQUIRE(ivchan_registry_key(reg, 1, &key) == IVCHAN_OK);
    CHECK(std::string(key) == "2.4GHz/direction/anterior");
    CHECK(ivchan_registry_key(reg, 2, &key) == IVCHAN_E_INVALID_ARGUMENT);

    ivchan_model *model = nullptr;
    REQUIRE(ivchan_registry_model(reg, "915MHz", "heart", &model) == IVCHAN_OK);
    double mean = 0.0;
    CHECK(ivchan_model_mean_pl(model, 10.0, &mean) == IVCHAN_OK);
    CHECK(std::abs(mean - 33.0) < 1e-12);
    ivchan_model_free(model);

    REQUIRE(ivchan_registry_model(reg, "2.4GHz", "anterior", &model) == IVCHAN_OK);
    ivchan_pl_model params;
    CHECK(ivchan_model_params(model, &params) == IVCHAN_OK);
    CHECK(params.band == IVCHAN_BAND_2400MHZ);
    CHECK(params.m_db == 9.9);
    ivchan_model_free(model);

    CHECK(ivchan_registry_model(reg, "915MHz", "anterior", &model) ==
          IVCHAN_E_UNKNOWN_CONTEXT);
    ivchan_registry_free(reg);

    ivchan_registry *dup = nullptr;
    std::string twice = std::string(registry_text) + registry_text;
    CHECK(ivchan_registry_parse(twice.c_str(), &dup) == IVCHAN_E_DUPLICATE_KEY);
    CHECK(dup == nullptr);

    ivchan_registry *missing = nullptr;
    CHECK(ivchan_registry_open("/nonexistent/params.txt", &missing) == IVCHAN_E_IO);
}

TEST_CASE("bundled parameter file opens through the C interface")
{
    ivchan_registry *reg = nullptr;
    std::string path = std::string(IVCHAN_DATA_DIR) + "/invivo_params.txt";
    REQUIRE(ivchan_registry_open(path.c_str(), &reg) == IVCHAN_OK);
    CHECK(ivchan_registry_size(reg) == 18);

    ivchan_model *low = nullptr, *high = nullptr;
    REQUIRE(ivchan_registry_model(reg, "915MHz", "torso", &low) == IVCHAN_OK);
    REQUIRE(ivchan_registry_model(reg, "2.4GHz", "torso", &high) == IVCHAN_OK);
    ivchan_pl_model a, b;
    REQUIRE(ivchan_model_params(low, &a) == IVCHAN_OK);
    REQUIRE(ivchan_model_params(high, &b) == IVCHAN_OK);
    double ratio = b.m_db / a.m_db;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
    ivchan_model_free(low);
    ivchan_model_free(high);
    ivchan_registry_free(reg);
}

TEST_CASE("dispersion pipeline from synthesized taps")
{
    // Tap delays on the exact unpadded delay grid so the profile recovers
    // the construction: n = 64 points, 1 MHz steps, taps at bins 0/10/25.
    const size_t n = 64;
    const double f_step = 1e6;
    const double t_step = 1.0 / (double(n) * f_step);
    double delays[3] = {0.0, 10.0 * t_step, 25.0 * t_step};
    double gains_re[3] = {1.0, 0.6, 0.3};
    double gains_im[3] = {0.0, 0.0, 0.0};

    ivchan_freq_response *fr = nullptr;
    REQUIRE(ivchan_fr_synthesize(delays, gains_re, gains_im, 3, 905e6, f_step, n, &fr) ==
            IVCHAN_OK);
    size_t fr_size = 0;
    CHECK(ivchan_fr_size(fr, &fr_size) == IVCHAN_OK);
    CHECK(fr_size == n);
    double f_start = 0.0, step = 0.0;
    CHECK(ivchan_fr_grid(fr, &f_start, &step) == IVCHAN_OK);
    CHECK(f_start == 905e6);
    CHECK(step == f_step);

    ivchan_impulse *ir = nullptr;
    REQUIRE(ivchan_impulse_compute(fr, IVCHAN_WINDOW_RECTANGULAR, 1, &ir) == IVCHAN_OK);
    size_t ir_size = 0;
    CHECK(ivchan_impulse_size(ir, &ir_size) == IVCHAN_OK);
    CHECK(ir_size == n);
    double got_t_step = 0.0;
    CHECK(ivchan_impulse_t_step(ir, &got_t_step) == IVCHAN_OK);
    CHECK(std::abs(got_t_step - t_step) < 1e-20);

    ivchan_pdp *pdp = nullptr;
    REQUIRE(ivchan_pdp_compute(ir, 60.0, &pdp) == IVCHAN_OK);
    size_t taps = 0;
    CHECK(ivchan_pdp_size(pdp, &taps) == IVCHAN_OK);
    REQUIRE(taps == 3);

    double delay = 0.0, power = 0.0;
    REQUIRE(ivchan_pdp_entry(pdp, 1, &delay, &power) == IVCHAN_OK);
    CHECK(std::abs(delay - 10.0 * t_step) < 1e-18);
    double total = 1.0 + 0.36 + 0.09;
    CHECK(std::abs(power - 0.36 / total) < 1e-9);
    CHECK(ivchan_pdp_entry(pdp, 3, &delay, &power) == IVCHAN_E_INVALID_ARGUMENT);

    ivchan_multipath_stats stats;
    REQUIRE(ivchan_pdp_stats(pdp, &stats) == IVCHAN_OK);
    // Closed-form moments of the generating taps.
    double m1 = (0.36 * 10.0 + 0.09 * 25.0) * t_step / total;
    double m2 = (0.36 * 100.0 + 0.09 * 625.0) * t_step * t_step / total;
    double sigma = std::sqrt(m2 - m1 * m1);
    CHECK(std::abs(stats.mean_excess_delay_s - m1) < 1e-9 * m1);
    CHECK(std::abs(stats.rms_delay_spread_s - sigma) < 1e-9 * sigma);
    CHECK(stats.bc_valid == 1);
    CHECK(std::abs(stats.coherence_bw_hz - 1.0 / (50.0 * stats.rms_delay_spread_s)) < 1e-6);

    ivchan_pdp_free(pdp);
    ivchan_impulse_free(ir);
    ivchan_fr_free(fr);
}

TEST_CASE("band-average path loss of a flat sweep")
{
    double delay = 0.0, gain_re = 0.1, gain_im = 0.0;
    ivchan_freq_response *fr = nullptr;
    REQUIRE(ivchan_fr_synthesize(&delay, &gain_re, &gain_im, 1, 905e6, 1e6, 16, &fr) ==
            IVCHAN_OK);
    double pl = 0.0;
    CHECK(ivchan_fr_path_loss(fr, &pl) == IVCHAN_OK);
    CHECK(std::abs(pl - 20.0) < 1e-12);
    ivchan_fr_free(fr);
}

TEST_CASE("hand-built profile statistics and classification")
{
    double delays[2] = {0.0, 4e-9};
    double powers[2] = {0.75, 0.25};
    ivchan_pdp *pdp = nullptr;
    REQUIRE(ivchan_pdp_create(delays, powers, 2, &pdp) == IVCHAN_OK);
    ivchan_multipath_stats stats;
    REQUIRE(ivchan_pdp_stats(pdp, &stats) == IVCHAN_OK);
    CHECK(std::abs(stats.mean_excess_delay_s - 1e-9) < 1e-24);
    CHECK(std::abs(stats.rms_delay_spread_s - std::sqrt(3.0) * 1e-9) < 1e-23);
    ivchan_pdp_free(pdp);

    double bc = 0.0;
    REQUIRE(ivchan_coherence_bandwidth(2.76e-9, &bc) == IVCHAN_OK);
    CHECK(std::abs(bc - 7246376.811594203) < 1e-6);
    CHECK(ivchan_coherence_bandwidth(0.0, &bc) == IVCHAN_E_NON_POSITIVE_DELAY_SPREAD);

    int is_flat = -1;
    REQUIRE(ivchan_classify_channel(5e6, bc, &is_flat) == IVCHAN_OK);
    CHECK(is_flat == 1);
    REQUIRE(ivchan_classify_channel(bc, bc, &is_flat) == IVCHAN_OK);
    CHECK(is_flat == 0);

    double bad_delays[2] = {4e-9, 4e-9};
    CHECK(ivchan_pdp_create(bad_delays, powers, 2, &pdp) == IVCHAN_E_INVALID_ARGUMENT);
}

TEST_CASE("Touchstone ingest through the C interface")
{
    const char *text = "# MHZ S RI R 50\n"
                       "905 0 0 0.5 0 0.5 0 0 0\n"
                       "915 0 0 0.4 0 0.4 0 0 0\n"
                       "925 0 0 0.3 0 0.3 0 0 0\n";

    SUBCASE("from memory")
    {
        ivchan_freq_response *fr = nullptr;
        REQUIRE(ivchan_fr_parse_touchstone(text, &fr) == IVCHAN_OK);
        double f_start = 0.0, f_step = 0.0;
        CHECK(ivchan_fr_grid(fr, &f_start, &f_step) == IVCHAN_OK);
        CHECK(std::abs(f_start - 905e6) < 1.0);
        CHECK(std::abs(f_step - 10e6) < 1.0);
        ivchan_fr_free(fr);
    }
    SUBCASE("from a file")
    {
        std::string path = "capi_sweep_tmp.s2p";
        {
            std::ofstream out(path);
            out << text;
        }
        ivchan_freq_response *fr = nullptr;
        REQUIRE(ivchan_fr_from_touchstone(path.c_str(), &fr) == IVCHAN_OK);
        size_t size = 0;
        CHECK(ivchan_fr_size(fr, &size) == IVCHAN_OK);
        CHECK(size == 3);
        ivchan_fr_free(fr);
        std::remove(path.c_str());
    }
    SUBCASE("parse failures carry the code and message")
    {
        ivchan_freq_response *fr = nullptr;
        CHECK(ivchan_fr_parse_touchstone("# HZ S RI R 50\n1 2 3\n", &fr) == IVCHAN_E_ROW_ARITY);
        CHECK(std::string(ivchan_last_error()).find("line 2") != std::string::npos);
        CHECK(ivchan_fr_from_touchstone("/nonexistent/sweep.s2p", &fr) == IVCHAN_E_IO);
    }
}

static const char *csv_text = "region,direction,depth_mm,band,pl_db,source\n"
                              "torso,anterior,10,915MHz,34.2,simulation\n"
                              "torso,anterior,50,915MHz,50.9,simulation\n"
                              "torso,anterior,100,915MHz,69.8,simulation\n"
                              "torso,posterior,10,2.4GHz,41.1,simulation\n"
                              "torso,posterior,50,2.4GHz,73.2,simulation\n"
                              "torso,posterior,100,2.4GHz,113.4,simulation\n";

TEST_CASE("datasets, fits and comparisons")
{
    ivchan_dataset *ds = nullptr;
    REQUIRE(ivchan_dataset_parse_csv(csv_text, 1, &ds) == IVCHAN_OK);
    CHECK(ivchan_dataset_size(ds) == 6);
    CHECK(ivchan_dataset_skipped(ds) == 0);

    ivchan_fits *fits = nullptr;
    REQUIRE(ivchan_fit_path_loss(ds, "band", &fits) == IVCHAN_OK);
    REQUIRE(ivchan_fits_size(fits) == 2);

    const char *key = nullptr;
    REQUIRE(ivchan_fits_key(fits, 0, &key) == IVCHAN_OK);
    CHECK(std::string(key) == "2.4GHz");
    REQUIRE(ivchan_fits_key(fits, 1, &key) == IVCHAN_OK);
    CHECK(std::string(key) == "915MHz");

    ivchan_fit high, low;
    REQUIRE(ivchan_fits_get(fits, 0, &high) == IVCHAN_OK);
    REQUIRE(ivchan_fits_get(fits, 1, &low) == IVCHAN_OK);
    CHECK(low.n_samples == 3);
    CHECK(low.m_db > 3.5);
    CHECK(low.m_db < 4.5);
    CHECK(high.m_db / low.m_db > 1.5);
    CHECK(low.r_squared > 0.99);

    double ratio = 0.0, delta = 0.0;
    REQUIRE(ivchan_compare_fits(&high, &low, &ratio, &delta) == IVCHAN_OK);
    CHECK(ratio == high.m_db / low.m_db);
    CHECK(delta == high.pl0_db - low.pl0_db);
    ivchan_fit flat = low;
    flat.m_db = 0.0;
    CHECK(ivchan_compare_fits(&high, &flat, &ratio, &delta) ==
          IVCHAN_E_ZERO_SLOPE_DENOMINATOR);

    size_t warnings = 0;
    REQUIRE(ivchan_fits_warning_count(fits, 1, &warnings) == IVCHAN_OK);
    CHECK(warnings == 3); // one record per depth bin, so every bin is omitted
    const char *warning = nullptr;
    REQUIRE(ivchan_fits_warning(fits, 1, 0, &warning) == IVCHAN_OK);
    CHECK(std::string(warning).find("omitted") != std::string::npos);
    size_t bins = 0;
    REQUIRE(ivchan_fits_residual_bin_count(fits, 1, &bins) == IVCHAN_OK);
    CHECK(bins == 0);

    ivchan_means *means = nullptr;
    REQUIRE(ivchan_mean_pl_by_depth(ds, "band", &means) == IVCHAN_OK);
    REQUIRE(ivchan_means_size(means) == 6);
    const char *group = nullptr;
    double depth = 0.0, mean_pl = 0.0;
    uint64_t count = 0;
    REQUIRE(ivchan_means_row(means, 0, &group, &depth, &mean_pl, &count) == IVCHAN_OK);
    CHECK(std::string(group) == "2.4GHz");
    CHECK(depth == 10.0);
    CHECK(mean_pl == 41.1);
    CHECK(count == 1);
    ivchan_means_free(means);

    ivchan_fits_free(fits);
    ivchan_dataset_free(ds);
}

TEST_CASE("lenient CSV ingest keeps skip records")
{
    const char *bad_csv = "region,depth_mm,band,pl_db\n"
                          "heart,25,915MHz,45.0\n"
                          "heart,5,915MHz,40.0\n";
    ivchan_dataset *ds = nullptr;
    REQUIRE(ivchan_dataset_parse_csv(bad_csv, 0, &ds) == IVCHAN_OK);
    CHECK(ivchan_dataset_size(ds) == 1);
    REQUIRE(ivchan_dataset_skipped(ds) == 1);
    uint64_t line = 0;
    const char *reason = nullptr;
    REQUIRE(ivchan_dataset_skip_reason(ds, 0, &line, &reason) == IVCHAN_OK);
    CHECK(line == 3);
    CHECK(std::strlen(reason) > 0);
    ivchan_dataset_free(ds);

    ivchan_dataset *strict = nullptr;
    CHECK(ivchan_dataset_parse_csv(bad_csv, 1, &strict) == IVCHAN_E_VALUE_OUT_OF_RANGE);
    CHECK(strict == nullptr);
}

TEST_CASE("report building and rendering")
{
    auto build = [](char **out, const char *format) {
        ivchan_report *rep = nullptr;
        REQUIRE(ivchan_report_create("classify", &rep) == IVCHAN_OK);
        REQUIRE(ivchan_report_run_str(rep, "input", "sweep.s2p") == IVCHAN_OK);
        REQUIRE(ivchan_report_run_num(rep, "floor_db", 30.0) == IVCHAN_OK);
        REQUIRE(ivchan_report_run_uint(rep, "seed", 42) == IVCHAN_OK);
        REQUIRE(ivchan_report_begin_record(rep) == IVCHAN_OK);
        REQUIRE(ivchan_report_str(rep, "kind", "flat") == IVCHAN_OK);
        REQUIRE(ivchan_report_num(rep, "bc_hz", 7.25e6) == IVCHAN_OK);
        REQUIRE(ivchan_report_bool(rep, "bc_valid", 1) == IVCHAN_OK);
        REQUIRE(ivchan_report_int(rep, "offset", -3) == IVCHAN_OK);
        REQUIRE(ivchan_report_warning(rep, "single tap") == IVCHAN_OK);
        REQUIRE(ivchan_report_render(rep, format, out) == IVCHAN_OK);
        ivchan_report_free(rep);
    };

    char *json1 = nullptr, *json2 = nullptr, *csv = nullptr;
    build(&json1, "json");
    build(&json2, "json");
    build(&csv, "csv");
    REQUIRE(json1 != nullptr);
    CHECK(std::string(json1) == std::string(json2));
    std::string doc(json1);
    CHECK(doc.find("\"tool\": \"ivchan\"") != std::string::npos);
    CHECK(doc.find("\"subcommand\": \"classify\"") != std::string::npos);
    CHECK(doc.find("\"kind\": \"flat\"") != std::string::npos);
    CHECK(doc.find("\"bc_valid\": true") != std::string::npos);
    std::string sheet(csv);
    CHECK(sheet.rfind("# {", 0) == 0);
    CHECK(sheet.find("kind,bc_hz,bc_valid,offset") != std::string::npos);
    ivchan_string_free(json1);
    ivchan_string_free(json2);
    ivchan_string_free(csv);

    ivchan_report *rep = nullptr;
    REQUIRE(ivchan_report_create("x", &rep) == IVCHAN_OK);
    char *out = nullptr;
    CHECK(ivchan_report_render(rep, "xml", &out) == IVCHAN_E_INVALID_ARGUMENT);
    // Record fields before any begin_record have nowhere to go.
    CHECK(ivchan_report_num(rep, "k", 1.0) == IVCHAN_E_INVALID_ARGUMENT);
    ivchan_report_free(rep);
}
