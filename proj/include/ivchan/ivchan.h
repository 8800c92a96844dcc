/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * ivchan - in vivo wireless channel modelling and measurement analysis
 * Copyright (C) 2026 ivchan developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the ivchan shared library.
 *
 * Conventions:
 *   - Every fallible function returns an int status code (IVCHAN_OK == 0 on
 *     success) and writes results through out-parameters.
 *   - ivchan_strerror() names a status code; ivchan_last_error() returns a
 *     thread-local detail message for the most recent failure on the
 *     calling thread.
 *   - Objects behind opaque handles are created by ivchan_*_create/open
 *     functions and released by the matching ivchan_*_free; freeing NULL is
 *     a no-op. Handles are immutable after creation (except the report
 *     builder) and safe to share across threads.
 *   - Angles are radians, frequencies Hz, delays seconds, depths mm, powers
 *     dBm or watts as named. dB values use 10*log10 for powers and
 *     20*log10 for S-parameter magnitudes.
 */

#ifndef IVCHAN_H
#define IVCHAN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C"
{
#endif

#if defined(_WIN32)
#if defined(IVCHAN_BUILD)
#define IVCHAN_API __declspec(dllexport)
#else
#define IVCHAN_API __declspec(dllimport)
#endif
#else
#define IVCHAN_API __attribute__((visibility("default")))
#endif

/* Status codes. */
#define IVCHAN_OK 0
#define IVCHAN_E_INVALID_ARGUMENT 1
#define IVCHAN_E_DEPTH_OUT_OF_RANGE 2
#define IVCHAN_E_EMPTY_PROFILE 3
#define IVCHAN_E_NON_POSITIVE_DISTANCE 4
#define IVCHAN_E_EMPTY_RESPONSE 5
#define IVCHAN_E_ZERO_MAGNITUDE_SAMPLE 6
#define IVCHAN_E_ALL_TAPS_BELOW_FLOOR 7
#define IVCHAN_E_ZERO_TOTAL_POWER 8
#define IVCHAN_E_NON_POSITIVE_DELAY_SPREAD 9
#define IVCHAN_E_INSUFFICIENT_DATA 10
#define IVCHAN_E_DEGENERATE_DEPTHS 11
#define IVCHAN_E_ZERO_SLOPE_DENOMINATOR 12
#define IVCHAN_E_MALFORMED_OPTION_LINE 13
#define IVCHAN_E_NON_MONOTONIC_FREQUENCY 14
#define IVCHAN_E_NON_UNIFORM_GRID 15
#define IVCHAN_E_ROW_ARITY 16
#define IVCHAN_E_MISSING_COLUMN 17
#define IVCHAN_E_VALUE_OUT_OF_RANGE 18
#define IVCHAN_E_EMPTY_FILE 19
#define IVCHAN_E_DUPLICATE_KEY 20
#define IVCHAN_E_MISSING_REQUIRED_FIELD 21
#define IVCHAN_E_UNKNOWN_CONTEXT 22
#define IVCHAN_E_UNSUPPORTED_VERSION 23
#define IVCHAN_E_PARSE 24
#define IVCHAN_E_IO 25
#define IVCHAN_E_INTERNAL 26

/* Frequency bands. */
#define IVCHAN_BAND_915MHZ 0
#define IVCHAN_BAND_2400MHZ 1

/* Inverse-DFT windows. */
#define IVCHAN_WINDOW_RECTANGULAR 0
#define IVCHAN_WINDOW_HANN 1

    /* Library identity and errors ---------------------------------------- */

    IVCHAN_API const char *ivchan_version(void);
    IVCHAN_API const char *ivchan_strerror(int code);

    /* Thread-local detail message of the last failing call on this thread;
     * empty string when no failure happened yet. The pointer stays valid
     * until the next failing call on the same thread. */
    IVCHAN_API const char *ivchan_last_error(void);

    /* Releases strings returned through char** out-parameters. */
    IVCHAN_API void ivchan_string_free(char *text);

    /* Small numeric helpers ----------------------------------------------- */

    IVCHAN_API double ivchan_wavelength_m(double frequency_hz);

    /* Gaussian tail probability Q(x) = P(Z > x). */
    IVCHAN_API double ivchan_q_function(double x);

    /* Path loss model ------------------------------------------------------
     *
     * The model is PL(d) = pl0_db + m_db * (d / d0_mm) plus a zero-mean
     * Gaussian shadowing term whose variance may depend on depth, valid for
     * depths in [depth_min_mm, depth_max_mm]. A model handle bundles the
     * mean-line parameters with a shadowing variance profile. */

    typedef struct ivchan_pl_model
    {
        double pl0_db;       /* intercept */
        double m_db;         /* decay per reference depth */
        double d0_mm;        /* reference depth, normally 10 */
        double depth_min_mm; /* validity range, normally [10, 100] */
        double depth_max_mm;
        int band;            /* IVCHAN_BAND_* */
    } ivchan_pl_model;

    typedef struct ivchan_antenna
    {
        double gain_linear;          /* >= 0 */
        double reflection_coeff_mag; /* |S11| resp. |S22|, in [0, 1] */
    } ivchan_antenna;

    typedef struct ivchan_link_budget
    {
        double in_body_pl_db;
        double external_pl_db;
        double total_pl_db;
        double rx_power_dbm;
        double margin_db;
        double shadowing_sigma_db;
    } ivchan_link_budget;

    typedef struct ivchan_mc_summary
    {
        uint64_t n_trials;
        uint64_t seed;
        double threshold_db;
        double mean_pl_db;
        double variance_db2;
        double min_pl_db;
        double max_pl_db;
        double outage_rate;
    } ivchan_mc_summary;

    typedef struct ivchan_model ivchan_model;

    /* Model with a single depth-independent shadowing sigma (dB). */
    IVCHAN_API int ivchan_model_create(const ivchan_pl_model *params, double sigma_db,
                                       ivchan_model **out);

    /* Model with a depth-binned shadowing variance table (dB^2); depths must
     * be strictly increasing. Variance between bins is interpolated
     * linearly, beyond the ends it clamps. */
    IVCHAN_API int ivchan_model_create_with_table(const ivchan_pl_model *params,
                                                  const double *depths_mm,
                                                  const double *variances_db2, size_t n_bins,
                                                  ivchan_model **out);

    IVCHAN_API void ivchan_model_free(ivchan_model *model);

    IVCHAN_API int ivchan_model_params(const ivchan_model *model, ivchan_pl_model *out);

    /* Mean path loss in dB at a depth. */
    IVCHAN_API int ivchan_model_mean_pl(const ivchan_model *model, double depth_mm,
                                        double *out_db);

    /* Shadowing standard deviation at a depth. */
    IVCHAN_API int ivchan_model_sigma(const ivchan_model *model, double depth_mm,
                                      double *out_sigma_db);

    /* n shadowed samples into out_db[0..n). Sample i is drawn from the
     * generator derived from (seed, i), so a prefix of a longer run is
     * identical to a shorter run with the same seed. */
    IVCHAN_API int ivchan_model_sample_pl(const ivchan_model *model, double depth_mm,
                                          uint64_t seed, size_t n, double *out_db);

    /* Closed-form P(PL > max_pl_db). */
    IVCHAN_API int ivchan_model_outage(const ivchan_model *model, double depth_mm,
                                       double max_pl_db, double *out_probability);

    /* In-body segment plus external free-space segment at the model's band.
     * With use_shadowing the in-body loss gets one Gaussian draw from the
     * given seed; otherwise the seed is ignored. external_distance_m may be
     * 0 for a link without an external hop. */
    IVCHAN_API int ivchan_model_link_budget(const ivchan_model *model, double depth_mm,
                                            double external_distance_m, double pt_dbm,
                                            const ivchan_antenna *tx, const ivchan_antenna *rx,
                                            double sensitivity_dbm, int use_shadowing,
                                            uint64_t seed, ivchan_link_budget *out);

    /* Seeded Monte Carlo over the shadowing term; bit-identical summary for
     * any worker count (workers = 0 uses the hardware concurrency). */
    IVCHAN_API int ivchan_model_monte_carlo(const ivchan_model *model, double depth_mm,
                                            uint64_t n_trials, uint64_t seed, double threshold_db,
                                            unsigned workers, ivchan_mc_summary *out);

    /* Free-space link pieces ------------------------------------------------ */

    /* Pr = Pt Gt (1-|S11|^2) Gr (1-|S22|^2) (lambda / 4 pi R)^2, watts. */
    IVCHAN_API int ivchan_friis_received_power(double pt_w, const ivchan_antenna *tx,
                                               const ivchan_antenna *rx, double wavelength_m,
                                               double distance_m, double *out_w);

    /* Loss of the external segment in dB; 0 dB when distance_m is 0. */
    IVCHAN_API int ivchan_external_path_loss_db(const ivchan_antenna *tx,
                                                const ivchan_antenna *rx, double wavelength_m,
                                                double distance_m, double *out_db);

    /* sensitivity + total loss + margin, dBm. */
    IVCHAN_API int ivchan_required_tx_power_dbm(double total_pl_db, double sensitivity_dbm,
                                                double margin_db, double *out_dbm);

    /* Parameter registry ----------------------------------------------------
     *
     * Bundled or user parameter files resolve (band, region) and
     * (band, direction) contexts to models; see the file format notes in the
     * repository documentation. */

    typedef struct ivchan_registry ivchan_registry;

    IVCHAN_API int ivchan_registry_open(const char *path, ivchan_registry **out);
    IVCHAN_API int ivchan_registry_parse(const char *text, ivchan_registry **out);
    IVCHAN_API void ivchan_registry_free(ivchan_registry *registry);

    IVCHAN_API size_t ivchan_registry_size(const ivchan_registry *registry);

    /* Key of entry index, e.g. "915MHz/region/heart"; the pointer lives as
     * long as the registry. */
    IVCHAN_API int ivchan_registry_key(const ivchan_registry *registry, size_t index,
                                       const char **out_key);

    /* Resolves a band label ("915MHz", "2.4GHz") and a context label that
     * names either a region (heart, stomach, kidneys, intestine, torso) or a
     * direction from the file. The returned model is independent of the
     * registry and must be freed by the caller. */
    IVCHAN_API int ivchan_registry_model(const ivchan_registry *registry, const char *band,
                                         const char *context, ivchan_model **out);

    /* Frequency responses and multipath -------------------------------------- */

    typedef struct ivchan_freq_response ivchan_freq_response;
    typedef struct ivchan_impulse ivchan_impulse;
    typedef struct ivchan_pdp ivchan_pdp;

    typedef struct ivchan_multipath_stats
    {
        double mean_excess_delay_s;
        double rms_delay_spread_s;
        double coherence_bw_hz; /* meaningful only when bc_valid != 0 */
        int bc_valid;
    } ivchan_multipath_stats;

    /* S21 from a Touchstone v1 two-port file (RI, MA and DB formats). The
     * frequency grid must be uniform. */
    IVCHAN_API int ivchan_fr_from_touchstone(const char *path, ivchan_freq_response **out);
    IVCHAN_API int ivchan_fr_parse_touchstone(const char *text, ivchan_freq_response **out);

    /* S21(f) = sum_i (gains_re[i] + j gains_im[i]) exp(-j 2 pi f delays_s[i])
     * on a uniform n_points grid. */
    IVCHAN_API int ivchan_fr_synthesize(const double *delays_s, const double *gains_re,
                                        const double *gains_im, size_t n_taps, double f_start_hz,
                                        double f_step_hz, size_t n_points,
                                        ivchan_freq_response **out);

    IVCHAN_API void ivchan_fr_free(ivchan_freq_response *fr);

    IVCHAN_API int ivchan_fr_size(const ivchan_freq_response *fr, size_t *out);
    IVCHAN_API int ivchan_fr_grid(const ivchan_freq_response *fr, double *out_f_start_hz,
                                  double *out_f_step_hz);

    /* Band-average path loss, -mean(20 log10 |S21|). */
    IVCHAN_API int ivchan_fr_path_loss(const ivchan_freq_response *fr, double *out_db);

    /* Windowed zero-padded inverse DFT; tap spacing becomes
     * 1 / (n_samples * zero_pad_factor * f_step). */
    IVCHAN_API int ivchan_impulse_compute(const ivchan_freq_response *fr, int window,
                                          int zero_pad_factor, ivchan_impulse **out);
    IVCHAN_API void ivchan_impulse_free(ivchan_impulse *ir);
    IVCHAN_API int ivchan_impulse_size(const ivchan_impulse *ir, size_t *out);
    IVCHAN_API int ivchan_impulse_t_step(const ivchan_impulse *ir, double *out_s);

    /* |h|^2 gated noise_floor_db below the peak, unit total power, first
     * retained tap at delay 0. */
    IVCHAN_API int ivchan_pdp_compute(const ivchan_impulse *ir, double noise_floor_db,
                                      ivchan_pdp **out);

    /* Profile from explicit (delay, linear power) taps, e.g. hand-built
     * test profiles; delays must be strictly increasing and >= 0. Powers
     * are taken as given (the statistics normalize internally). */
    IVCHAN_API int ivchan_pdp_create(const double *delays_s, const double *powers, size_t n,
                                     ivchan_pdp **out);

    IVCHAN_API void ivchan_pdp_free(ivchan_pdp *pdp);
    IVCHAN_API int ivchan_pdp_size(const ivchan_pdp *pdp, size_t *out);
    IVCHAN_API int ivchan_pdp_entry(const ivchan_pdp *pdp, size_t index, double *out_delay_s,
                                    double *out_power);

    /* Mean excess delay, RMS delay spread and the 1/(50 sigma_tau) coherence
     * bandwidth of a profile. */
    IVCHAN_API int ivchan_pdp_stats(const ivchan_pdp *pdp, ivchan_multipath_stats *out);

    /* 1 / (50 * sigma_tau). */
    IVCHAN_API int ivchan_coherence_bandwidth(double sigma_tau_s, double *out_hz);

    /* *out_is_flat = 1 iff signal_bw_hz < bc_hz (strict). */
    IVCHAN_API int ivchan_classify_channel(double signal_bw_hz, double bc_hz, int *out_is_flat);

    /* Measurement datasets and fitting ---------------------------------------- */

    typedef struct ivchan_dataset ivchan_dataset;
    typedef struct ivchan_fits ivchan_fits;

    typedef struct ivchan_fit
    {
        double pl0_db;
        double m_db;
        double d0_mm;
        double r_squared;
        uint64_t n_samples;
    } ivchan_fit;

    /* CSV columns: region, depth_mm, band, pl_db required; direction and
     * source optional. strict != 0 fails on the first bad row, otherwise bad
     * rows are skipped and kept as inspectable skip records. */
    IVCHAN_API int ivchan_dataset_from_csv(const char *path, int strict, ivchan_dataset **out);
    IVCHAN_API int ivchan_dataset_parse_csv(const char *text, int strict, ivchan_dataset **out);
    IVCHAN_API void ivchan_dataset_free(ivchan_dataset *dataset);

    IVCHAN_API size_t ivchan_dataset_size(const ivchan_dataset *dataset);
    IVCHAN_API size_t ivchan_dataset_skipped(const ivchan_dataset *dataset);
    IVCHAN_API int ivchan_dataset_skip_reason(const ivchan_dataset *dataset, size_t index,
                                              uint64_t *out_line, const char **out_reason);

    /* Ordinary least squares of pl_db against depth/d0 per group. grouping
     * is one of: band, region, direction, source, band_region,
     * band_direction, band_source, all. */
    IVCHAN_API int ivchan_fit_path_loss(const ivchan_dataset *dataset, const char *grouping,
                                        ivchan_fits **out);

    IVCHAN_API void ivchan_fits_free(ivchan_fits *fits);
    IVCHAN_API size_t ivchan_fits_size(const ivchan_fits *fits);
    IVCHAN_API int ivchan_fits_get(const ivchan_fits *fits, size_t index, ivchan_fit *out);
    IVCHAN_API int ivchan_fits_key(const ivchan_fits *fits, size_t index, const char **out_key);

    /* Depth-binned residual variance of one fit (the empirical shadowing
     * profile). */
    IVCHAN_API int ivchan_fits_residual_bin_count(const ivchan_fits *fits, size_t index,
                                                  size_t *out_n);
    IVCHAN_API int ivchan_fits_residual_bin(const ivchan_fits *fits, size_t index, size_t bin,
                                            double *out_depth_mm, double *out_variance_db2);

    IVCHAN_API int ivchan_fits_warning_count(const ivchan_fits *fits, size_t index, size_t *out_n);
    IVCHAN_API int ivchan_fits_warning(const ivchan_fits *fits, size_t index, size_t w,
                                       const char **out_text);

    /* decay-rate ratio m_a/m_b and intercept difference pl0_a - pl0_b. */
    IVCHAN_API int ivchan_compare_fits(const ivchan_fit *fit_a, const ivchan_fit *fit_b,
                                       double *out_ratio, double *out_delta_pl0_db);

    /* Mean path loss per (group, depth), flattened to rows sorted by group
     * key then depth. See ivchan_fit_path_loss for grouping names. */
    typedef struct ivchan_means ivchan_means;

    IVCHAN_API int ivchan_mean_pl_by_depth(const ivchan_dataset *dataset, const char *grouping,
                                           ivchan_means **out);
    IVCHAN_API void ivchan_means_free(ivchan_means *means);
    IVCHAN_API size_t ivchan_means_size(const ivchan_means *means);
    IVCHAN_API int ivchan_means_row(const ivchan_means *means, size_t row,
                                    const char **out_group_key, double *out_depth_mm,
                                    double *out_mean_pl_db, uint64_t *out_count);

    /* Report builder ----------------------------------------------------------
     *
     * Reports carry the run configuration and a list of records and render
     * deterministically to JSON or CSV ("json" / "csv"). Rendered text is
     * returned as a heap string to release with ivchan_string_free. */

    typedef struct ivchan_report ivchan_report;

    IVCHAN_API int ivchan_report_create(const char *subcommand, ivchan_report **out);
    IVCHAN_API void ivchan_report_free(ivchan_report *report);

    IVCHAN_API int ivchan_report_run_str(ivchan_report *report, const char *key,
                                         const char *value);
    IVCHAN_API int ivchan_report_run_num(ivchan_report *report, const char *key, double value);
    IVCHAN_API int ivchan_report_run_uint(ivchan_report *report, const char *key, uint64_t value);

    IVCHAN_API int ivchan_report_begin_record(ivchan_report *report);
    IVCHAN_API int ivchan_report_str(ivchan_report *report, const char *key, const char *value);
    IVCHAN_API int ivchan_report_num(ivchan_report *report, const char *key, double value);
    IVCHAN_API int ivchan_report_int(ivchan_report *report, const char *key, int64_t value);
    IVCHAN_API int ivchan_report_uint(ivchan_report *report, const char *key, uint64_t value);
    IVCHAN_API int ivchan_report_bool(ivchan_report *report, const char *key, int value);
    IVCHAN_API int ivchan_report_warning(ivchan_report *report, const char *text);

    IVCHAN_API int ivchan_report_render(const ivchan_report *report, const char *format,
                                        char **out_text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IVCHAN_H */
