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
// Command-line front end. Talks to the library exclusively through the
// public C interface, like any external consumer would.
//
// Exit codes: 0 success, 2 usage, 3 input parsing/ingestion, 4 domain.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <ivchan/ivchan.h>

namespace
{

struct run_error
{
    int exit_code;
    std::string message;
};

bool g_verbose = false;

int exit_class(int status)
{
    switch (status)
    {
    case IVCHAN_OK:
        return 0;
    case IVCHAN_E_INVALID_ARGUMENT:
        return 2;
    case IVCHAN_E_MALFORMED_OPTION_LINE:
    case IVCHAN_E_NON_MONOTONIC_FREQUENCY:
    case IVCHAN_E_NON_UNIFORM_GRID:
    case IVCHAN_E_ROW_ARITY:
    case IVCHAN_E_MISSING_COLUMN:
    case IVCHAN_E_VALUE_OUT_OF_RANGE:
    case IVCHAN_E_EMPTY_FILE:
    case IVCHAN_E_DUPLICATE_KEY:
    case IVCHAN_E_MISSING_REQUIRED_FIELD:
    case IVCHAN_E_UNSUPPORTED_VERSION:
    case IVCHAN_E_PARSE:
    case IVCHAN_E_IO:
        return 3;
    default:
        return 4;
    }
}

void check(int status, const std::string &context)
{
    if (status == IVCHAN_OK)
        return;
    std::string detail = ivchan_last_error();
    if (detail.empty())
        detail = ivchan_strerror(status);
    throw run_error{exit_class(status), context + ": " + detail};
}

template <typename T, void (*Free)(T *)> struct handle
{
    T *ptr = nullptr;
    handle() = default;
    handle(const handle &) = delete;
    handle &operator=(const handle &) = delete;
    ~handle() { Free(ptr); }
    T **out() { return &ptr; }
    operator T *() const { return ptr; }
};

using model_ptr = handle<ivchan_model, ivchan_model_free>;
using registry_ptr = handle<ivchan_registry, ivchan_registry_free>;
using fr_ptr = handle<ivchan_freq_response, ivchan_fr_free>;
using impulse_ptr = handle<ivchan_impulse, ivchan_impulse_free>;
using pdp_ptr = handle<ivchan_pdp, ivchan_pdp_free>;
using dataset_ptr = handle<ivchan_dataset, ivchan_dataset_free>;
using fits_ptr = handle<ivchan_fits, ivchan_fits_free>;
using means_ptr = handle<ivchan_means, ivchan_means_free>;

// Report builder over the C interface; the run section carries everything a
// rerun needs (inputs, flags, seed), so presentation and execution details
// (--output, --format, --workers) stay out of it.
class report_builder
{
  public:
    explicit report_builder(const char *subcommand)
    {
        check(ivchan_report_create(subcommand, &rep_), "report");
    }
    ~report_builder() { ivchan_report_free(rep_); }
    report_builder(const report_builder &) = delete;
    report_builder &operator=(const report_builder &) = delete;

    void run_str(const char *key, const std::string &value)
    {
        check(ivchan_report_run_str(rep_, key, value.c_str()), "report");
    }
    void run_num(const char *key, double value)
    {
        check(ivchan_report_run_num(rep_, key, value), "report");
    }
    void run_uint(const char *key, std::uint64_t value)
    {
        check(ivchan_report_run_uint(rep_, key, value), "report");
    }
    void begin_record() { check(ivchan_report_begin_record(rep_), "report"); }
    void str(const char *key, const std::string &value)
    {
        check(ivchan_report_str(rep_, key, value.c_str()), "report");
    }
    void num(const char *key, double value)
    {
        check(ivchan_report_num(rep_, key, value), "report");
    }
    void uint(const char *key, std::uint64_t value)
    {
        check(ivchan_report_uint(rep_, key, value), "report");
    }
    void boolean(const char *key, bool value)
    {
        check(ivchan_report_bool(rep_, key, value ? 1 : 0), "report");
    }
    void warning(const std::string &text)
    {
        check(ivchan_report_warning(rep_, text.c_str()), "report");
    }

    std::string render(const std::string &format) const
    {
        char *text = nullptr;
        check(ivchan_report_render(rep_, format.c_str(), &text), "report");
        std::string out(text);
        ivchan_string_free(text);
        return out;
    }

  private:
    ivchan_report *rep_ = nullptr;
};

void emit(const report_builder &report, const std::string &format, const std::string &output)
{
    std::string text = report.render(format);
    if (g_verbose)
        std::cerr << "ivchan: " << text.size() << " bytes of " << format << " to "
                  << (output.empty() ? "stdout" : output) << "\n";
    if (output.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out)
        throw run_error{3, "cannot open output file '" + output + "'"};
    out << text;
    if (!out)
        throw run_error{3, "cannot write output file '" + output + "'"};
}

// "20MHz", "7.25 MHz", "500000" (Hz when no suffix); case-insensitive.
double parse_frequency(const std::string &text, const char *flag)
{
    std::size_t split = 0;
    while (split < text.size() &&
           !std::isalpha(static_cast<unsigned char>(text[split])))
        split++;
    std::string number = text.substr(0, split);
    while (!number.empty() && std::isspace(static_cast<unsigned char>(number.back())))
        number.pop_back();
    std::string suffix;
    for (std::size_t i = split; i < text.size(); i++)
        suffix += char(std::tolower(static_cast<unsigned char>(text[i])));

    double value = 0.0;
    auto res = std::from_chars(number.c_str(), number.c_str() + number.size(), value);
    bool number_ok = res.ec == std::errc() && res.ptr == number.c_str() + number.size() &&
                     !number.empty();
    double multiplier = 0.0;
    if (suffix.empty() || suffix == "hz")
        multiplier = 1.0;
    else if (suffix == "khz")
        multiplier = 1e3;
    else if (suffix == "mhz")
        multiplier = 1e6;
    else if (suffix == "ghz")
        multiplier = 1e9;

    if (!number_ok || multiplier == 0.0 || !(value * multiplier > 0.0))
        throw run_error{2, std::string(flag) + ": '" + text +
                               "' is not a positive frequency (use Hz, kHz, MHz or GHz)"};
    return value * multiplier;
}

int window_from_name(const std::string &name)
{
    if (name == "rect" || name == "rectangular")
        return IVCHAN_WINDOW_RECTANGULAR;
    if (name == "hann")
        return IVCHAN_WINDOW_HANN;
    throw run_error{2, "--window: unknown window '" + name + "' (use rect or hann)"};
}

void open_model(const std::string &params, const std::string &band, const std::string &context,
                model_ptr &model)
{
    registry_ptr registry;
    check(ivchan_registry_open(params.c_str(), registry.out()), params);
    check(ivchan_registry_model(registry, band.c_str(), context.c_str(), model.out()),
          band + "/" + context);
}

// Shared option bundles ----------------------------------------------------

struct output_options
{
    std::string format = "json";
    std::string output;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--format", format, "Report format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--output", output, "Write the report to a file instead of stdout");
    }
};

struct model_options
{
    std::string params;
    std::string band;
    std::string context;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--params", params, "Model parameter file")->required();
        cmd->add_option("--band", band, "Frequency band: 915MHz or 2.4GHz")->required();
        cmd->add_option("--context", context, "Anatomical region or insertion direction")
            ->required();
    }

    void describe(report_builder &report) const
    {
        report.run_str("params", params);
        report.run_str("band", band);
        report.run_str("context", context);
    }
};

struct sweep_options
{
    std::string s2p;
    std::string window = "hann";
    int pad = 8;
    double floor_db = 30.0;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--s2p", s2p, "Touchstone v1 two-port sweep")->required();
        cmd->add_option("--window", window, "Inverse-DFT window: rect or hann");
        cmd->add_option("--pad", pad, "Zero-padding factor (>= 1)");
        cmd->add_option("--floor-db", floor_db, "Noise gate below the peak tap, dB");
    }

    void describe(report_builder &report) const
    {
        report.run_str("s2p", s2p);
        report.run_str("window", window == "rect" ? "rectangular" : window);
        report.run_num("pad", pad);
        report.run_num("floor_db", floor_db);
    }

    void pipeline(fr_ptr &fr, impulse_ptr &ir, pdp_ptr &pdp) const
    {
        check(ivchan_fr_from_touchstone(s2p.c_str(), fr.out()), s2p);
        check(ivchan_impulse_compute(fr, window_from_name(window), pad, ir.out()), s2p);
        check(ivchan_pdp_compute(ir, floor_db, pdp.out()), s2p);
    }
};

// Subcommand handlers -------------------------------------------------------

void run_ingest(const std::string &csv, bool strict, const output_options &out)
{
    dataset_ptr dataset;
    check(ivchan_dataset_from_csv(csv.c_str(), strict ? 1 : 0, dataset.out()), csv);

    report_builder report("ingest");
    report.run_str("csv", csv);
    report.run_str("mode", strict ? "strict" : "lenient");
    report.begin_record();
    report.str("record", "summary");
    report.uint("accepted", ivchan_dataset_size(dataset));
    report.uint("skipped", ivchan_dataset_skipped(dataset));
    for (std::size_t i = 0; i < ivchan_dataset_skipped(dataset); i++)
    {
        std::uint64_t line = 0;
        const char *reason = nullptr;
        check(ivchan_dataset_skip_reason(dataset, i, &line, &reason), csv);
        report.begin_record();
        report.str("record", "skip");
        report.uint("line", line);
        report.str("reason", reason);
    }
    emit(report, out.format, out.output);
}

void describe_fits(report_builder &report, const fits_ptr &fits)
{
    for (std::size_t i = 0; i < ivchan_fits_size(fits); i++)
    {
        const char *key = nullptr;
        check(ivchan_fits_key(fits, i, &key), "fit");
        ivchan_fit fit;
        check(ivchan_fits_get(fits, i, &fit), "fit");
        report.begin_record();
        report.str("record", "fit");
        report.str("group", key);
        report.num("pl0_db", fit.pl0_db);
        report.num("m_db", fit.m_db);
        report.num("d0_mm", fit.d0_mm);
        report.num("r_squared", fit.r_squared);
        report.uint("n_samples", fit.n_samples);

        std::size_t bins = 0;
        check(ivchan_fits_residual_bin_count(fits, i, &bins), "fit");
        for (std::size_t b = 0; b < bins; b++)
        {
            double depth = 0.0, variance = 0.0;
            check(ivchan_fits_residual_bin(fits, i, b, &depth, &variance), "fit");
            report.begin_record();
            report.str("record", "residual_bin");
            report.str("group", key);
            report.num("depth_mm", depth);
            report.num("variance_db2", variance);
        }
        std::size_t warnings = 0;
        check(ivchan_fits_warning_count(fits, i, &warnings), "fit");
        for (std::size_t w = 0; w < warnings; w++)
        {
            const char *text = nullptr;
            check(ivchan_fits_warning(fits, i, w, &text), "fit");
            report.warning(std::string(key) + ": " + text);
        }
    }
}

void run_fit(const std::string &csv, bool strict, const std::string &group_by,
             const output_options &out)
{
    dataset_ptr dataset;
    check(ivchan_dataset_from_csv(csv.c_str(), strict ? 1 : 0, dataset.out()), csv);
    fits_ptr fits;
    check(ivchan_fit_path_loss(dataset, group_by.c_str(), fits.out()), csv);

    report_builder report("fit");
    report.run_str("csv", csv);
    report.run_str("mode", strict ? "strict" : "lenient");
    report.run_str("group_by", group_by);
    describe_fits(report, fits);
    emit(report, out.format, out.output);
}

std::size_t find_fit(const fits_ptr &fits, const std::string &key)
{
    for (std::size_t i = 0; i < ivchan_fits_size(fits); i++)
    {
        const char *candidate = nullptr;
        check(ivchan_fits_key(fits, i, &candidate), "fit");
        if (key == candidate)
            return i;
    }
    throw run_error{4, "group '" + key + "' not present in the fitted data"};
}

void run_compare(const std::string &csv, bool strict, const std::string &group_by,
                 const std::string &key_a, const std::string &key_b, const output_options &out)
{
    dataset_ptr dataset;
    check(ivchan_dataset_from_csv(csv.c_str(), strict ? 1 : 0, dataset.out()), csv);
    fits_ptr fits;
    check(ivchan_fit_path_loss(dataset, group_by.c_str(), fits.out()), csv);

    ivchan_fit fit_a, fit_b;
    check(ivchan_fits_get(fits, find_fit(fits, key_a), &fit_a), key_a);
    check(ivchan_fits_get(fits, find_fit(fits, key_b), &fit_b), key_b);
    double ratio = 0.0, delta_pl0 = 0.0;
    check(ivchan_compare_fits(&fit_a, &fit_b, &ratio, &delta_pl0), "compare");

    report_builder report("compare");
    report.run_str("csv", csv);
    report.run_str("mode", strict ? "strict" : "lenient");
    report.run_str("group_by", group_by);
    report.run_str("a", key_a);
    report.run_str("b", key_b);
    report.begin_record();
    report.str("record", "comparison");
    report.str("a", key_a);
    report.str("b", key_b);
    report.num("decay_rate_ratio", ratio);
    report.num("delta_pl0_db", delta_pl0);
    for (int depth = 10; depth <= 100; depth += 10)
    {
        double mean_a = fit_a.pl0_db + fit_a.m_db * (depth / fit_a.d0_mm);
        double mean_b = fit_b.pl0_db + fit_b.m_db * (depth / fit_b.d0_mm);
        report.begin_record();
        report.str("record", "depth_delta");
        report.num("depth_mm", depth);
        report.num("delta_db", mean_a - mean_b);
    }
    emit(report, out.format, out.output);
}

void run_predict(const model_options &model_opts, std::vector<double> depths,
                 const output_options &out)
{
    model_ptr model;
    open_model(model_opts.params, model_opts.band, model_opts.context, model);
    if (depths.empty())
        for (int depth = 10; depth <= 100; depth += 10)
            depths.push_back(depth);

    report_builder report("predict");
    model_opts.describe(report);
    for (double depth : depths)
    {
        double mean = 0.0, sigma = 0.0;
        check(ivchan_model_mean_pl(model, depth, &mean), model_opts.context);
        check(ivchan_model_sigma(model, depth, &sigma), model_opts.context);
        report.begin_record();
        report.num("depth_mm", depth);
        report.num("mean_pl_db", mean);
        report.num("sigma_db", sigma);
    }
    emit(report, out.format, out.output);
}

void run_sample(const model_options &model_opts, double depth, std::uint64_t n,
                std::uint64_t seed, const output_options &out)
{
    model_ptr model;
    open_model(model_opts.params, model_opts.band, model_opts.context, model);
    std::vector<double> samples(n);
    check(ivchan_model_sample_pl(model, depth, seed, samples.size(), samples.data()),
          model_opts.context);

    report_builder report("sample");
    model_opts.describe(report);
    report.run_num("depth_mm", depth);
    report.run_uint("n", n);
    report.run_uint("seed", seed);
    for (std::size_t i = 0; i < samples.size(); i++)
    {
        report.begin_record();
        report.uint("trial", i);
        report.num("pl_db", samples[i]);
    }
    emit(report, out.format, out.output);
}

void run_outage(const model_options &model_opts, double depth, double max_pl,
                const output_options &out)
{
    model_ptr model;
    open_model(model_opts.params, model_opts.band, model_opts.context, model);
    double probability = 0.0;
    check(ivchan_model_outage(model, depth, max_pl, &probability), model_opts.context);

    report_builder report("outage");
    model_opts.describe(report);
    report.run_num("depth_mm", depth);
    report.run_num("max_pl_db", max_pl);
    report.begin_record();
    report.num("depth_mm", depth);
    report.num("max_pl_db", max_pl);
    report.num("outage_probability", probability);
    emit(report, out.format, out.output);
}

void run_montecarlo(const model_options &model_opts, double depth, std::uint64_t n,
                    std::uint64_t seed, double threshold, unsigned workers,
                    const output_options &out)
{
    model_ptr model;
    open_model(model_opts.params, model_opts.band, model_opts.context, model);
    ivchan_mc_summary summary;
    check(ivchan_model_monte_carlo(model, depth, n, seed, threshold, workers, &summary),
          model_opts.context);

    report_builder report("montecarlo");
    model_opts.describe(report);
    report.run_num("depth_mm", depth);
    report.run_uint("n", n);
    report.run_uint("seed", seed);
    report.run_num("threshold_db", threshold);
    report.begin_record();
    report.num("mean_pl_db", summary.mean_pl_db);
    report.num("variance_db2", summary.variance_db2);
    report.num("min_pl_db", summary.min_pl_db);
    report.num("max_pl_db", summary.max_pl_db);
    report.num("outage_rate", summary.outage_rate);
    emit(report, out.format, out.output);
}

void run_linkbudget(const model_options &model_opts, double depth, double distance, double pt_dbm,
                    double sensitivity_dbm, double margin_db, const ivchan_antenna &tx,
                    const ivchan_antenna &rx, bool shadowing, bool seed_given,
                    std::uint64_t seed, const output_options &out)
{
    if (shadowing && !seed_given)
        throw run_error{2, "--seed is required with --shadowing"};
    model_ptr model;
    open_model(model_opts.params, model_opts.band, model_opts.context, model);
    ivchan_link_budget budget;
    check(ivchan_model_link_budget(model, depth, distance, pt_dbm, &tx, &rx, sensitivity_dbm,
                                   shadowing ? 1 : 0, seed, &budget),
          model_opts.context);
    double required = 0.0;
    check(ivchan_required_tx_power_dbm(budget.total_pl_db, sensitivity_dbm, margin_db, &required),
          model_opts.context);

    report_builder report("linkbudget");
    model_opts.describe(report);
    report.run_num("depth_mm", depth);
    report.run_num("distance_m", distance);
    report.run_num("pt_dbm", pt_dbm);
    report.run_num("sensitivity_dbm", sensitivity_dbm);
    report.run_num("margin_db", margin_db);
    report.run_num("tx_gain", tx.gain_linear);
    report.run_num("tx_refl", tx.reflection_coeff_mag);
    report.run_num("rx_gain", rx.gain_linear);
    report.run_num("rx_refl", rx.reflection_coeff_mag);
    report.run_str("shadowing", shadowing ? "on" : "off");
    if (shadowing)
        report.run_uint("seed", seed);
    report.begin_record();
    report.num("in_body_pl_db", budget.in_body_pl_db);
    report.num("external_pl_db", budget.external_pl_db);
    report.num("total_pl_db", budget.total_pl_db);
    report.num("rx_power_dbm", budget.rx_power_dbm);
    report.num("margin_db", budget.margin_db);
    report.num("shadowing_sigma_db", budget.shadowing_sigma_db);
    report.num("required_tx_power_dbm", required);
    emit(report, out.format, out.output);
}

void run_pdp(const sweep_options &sweep, const output_options &out)
{
    fr_ptr fr;
    impulse_ptr ir;
    pdp_ptr pdp;
    sweep.pipeline(fr, ir, pdp);

    report_builder report("pdp");
    sweep.describe(report);
    std::size_t taps = 0;
    check(ivchan_pdp_size(pdp, &taps), sweep.s2p);
    for (std::size_t i = 0; i < taps; i++)
    {
        double delay = 0.0, power = 0.0;
        check(ivchan_pdp_entry(pdp, i, &delay, &power), sweep.s2p);
        report.begin_record();
        report.uint("tap", i);
        report.num("delay_s", delay);
        report.num("power", power);
    }
    emit(report, out.format, out.output);
}

void run_stats(const sweep_options &sweep, const std::string &signal_bw_text,
               const output_options &out)
{
    fr_ptr fr;
    impulse_ptr ir;
    pdp_ptr pdp;
    sweep.pipeline(fr, ir, pdp);

    double band_pl = 0.0;
    check(ivchan_fr_path_loss(fr, &band_pl), sweep.s2p);
    ivchan_multipath_stats stats;
    check(ivchan_pdp_stats(pdp, &stats), sweep.s2p);

    report_builder report("stats");
    sweep.describe(report);
    if (!signal_bw_text.empty())
        report.run_str("signal_bw", signal_bw_text);
    report.begin_record();
    report.str("record", "stats");
    report.num("band_avg_pl_db", band_pl);
    report.num("mean_excess_delay_s", stats.mean_excess_delay_s);
    report.num("rms_delay_spread_s", stats.rms_delay_spread_s);
    report.boolean("bc_valid", stats.bc_valid != 0);
    if (stats.bc_valid != 0)
        report.num("coherence_bw_hz", stats.coherence_bw_hz);

    if (!signal_bw_text.empty())
    {
        double signal_bw = parse_frequency(signal_bw_text, "--signal-bw");
        if (stats.bc_valid == 0)
            throw run_error{4, "classification needs a dispersive profile "
                               "(single-tap profile has no coherence bandwidth)"};
        int is_flat = 0;
        check(ivchan_classify_channel(signal_bw, stats.coherence_bw_hz, &is_flat), sweep.s2p);
        report.begin_record();
        report.str("record", "classification");
        report.num("signal_bw_hz", signal_bw);
        report.num("coherence_bw_hz", stats.coherence_bw_hz);
        report.str("kind", is_flat ? "flat" : "frequency_selective");
    }
    emit(report, out.format, out.output);
}

void run_classify(const std::string &signal_bw_text, const std::string &bc_text,
                  double sigma_tau_ns, const output_options &out)
{
    double signal_bw = parse_frequency(signal_bw_text, "--signal-bw");
    double bc = 0.0;
    if (!bc_text.empty())
        bc = parse_frequency(bc_text, "--bc");
    else
        check(ivchan_coherence_bandwidth(sigma_tau_ns * 1e-9, &bc), "--sigma-tau-ns");
    int is_flat = 0;
    check(ivchan_classify_channel(signal_bw, bc, &is_flat), "classify");

    report_builder report("classify");
    report.run_str("signal_bw", signal_bw_text);
    if (!bc_text.empty())
        report.run_str("bc", bc_text);
    else
        report.run_num("sigma_tau_ns", sigma_tau_ns);
    report.begin_record();
    report.num("signal_bw_hz", signal_bw);
    report.num("coherence_bw_hz", bc);
    report.str("kind", is_flat ? "flat" : "frequency_selective");
    emit(report, out.format, out.output);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"In vivo wireless channel modelling and measurement analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ivchan_version());
    app.add_flag("--verbose", g_verbose, "Log progress notes to stderr");

    // ingest
    auto *ingest = app.add_subcommand("ingest", "Validate a measurement CSV");
    std::string ingest_csv;
    bool ingest_strict = false;
    output_options ingest_out;
    ingest->add_option("--csv", ingest_csv, "Measurement CSV file")->required();
    ingest->add_flag("--strict", ingest_strict, "Fail on the first bad row");
    ingest_out.attach(ingest);

    // fit
    auto *fit = app.add_subcommand("fit", "Fit the path loss line per group");
    std::string fit_csv, fit_group = "all";
    bool fit_strict = false;
    output_options fit_out;
    fit->add_option("--csv", fit_csv, "Measurement CSV file")->required();
    fit->add_option("--group-by", fit_group,
                    "band, region, direction, source, band_region, band_direction, "
                    "band_source or all");
    fit->add_flag("--strict", fit_strict, "Fail on the first bad row");
    fit_out.attach(fit);

    // compare
    auto *compare = app.add_subcommand("compare", "Compare two fitted groups");
    std::string cmp_csv, cmp_group = "band", cmp_a, cmp_b;
    bool cmp_strict = false;
    output_options cmp_out;
    compare->add_option("--csv", cmp_csv, "Measurement CSV file")->required();
    compare->add_option("--group-by", cmp_group, "Grouping that defines the two groups");
    compare->add_option("--a", cmp_a, "Numerator group key")->required();
    compare->add_option("--b", cmp_b, "Denominator group key")->required();
    compare->add_flag("--strict", cmp_strict, "Fail on the first bad row");
    cmp_out.attach(compare);

    // predict
    auto *predict = app.add_subcommand("predict", "Mean path loss at one or more depths");
    model_options predict_model;
    std::vector<double> predict_depths;
    output_options predict_out;
    predict_model.attach(predict);
    predict->add_option("--depth-mm", predict_depths,
                        "Depth(s) in mm; defaults to the 10..100 mm grid");
    predict_out.attach(predict);

    // sample
    auto *sample = app.add_subcommand("sample", "Draw shadowed path loss samples");
    model_options sample_model;
    double sample_depth = 0.0;
    std::uint64_t sample_n = 0, sample_seed = 0;
    output_options sample_out;
    sample_model.attach(sample);
    sample->add_option("--depth-mm", sample_depth, "Depth in mm")->required();
    sample->add_option("--n", sample_n, "Number of samples")->required();
    sample->add_option("--seed", sample_seed, "Random seed")->required();
    sample_out.attach(sample);

    // outage
    auto *outage = app.add_subcommand("outage", "Closed-form outage probability");
    model_options outage_model;
    double outage_depth = 0.0, outage_max_pl = 0.0;
    output_options outage_out;
    outage_model.attach(outage);
    outage->add_option("--depth-mm", outage_depth, "Depth in mm")->required();
    outage->add_option("--max-pl-db", outage_max_pl, "Largest tolerable path loss, dB")
        ->required();
    outage_out.attach(outage);

    // montecarlo
    auto *montecarlo = app.add_subcommand("montecarlo", "Seeded shadowing Monte Carlo");
    model_options mc_model;
    double mc_depth = 0.0, mc_threshold = 0.0;
    std::uint64_t mc_n = 0, mc_seed = 0;
    unsigned mc_workers = 0;
    output_options mc_out;
    mc_model.attach(montecarlo);
    montecarlo->add_option("--depth-mm", mc_depth, "Depth in mm")->required();
    montecarlo->add_option("--n", mc_n, "Number of trials")->required();
    montecarlo->add_option("--seed", mc_seed, "Random seed")->required();
    montecarlo->add_option("--threshold-db", mc_threshold, "Outage threshold, dB")->required();
    montecarlo->add_option("--workers", mc_workers,
                           "Worker threads (0 = hardware concurrency); does not affect results");
    mc_out.attach(montecarlo);

    // linkbudget
    auto *linkbudget = app.add_subcommand("linkbudget", "In-body plus free-space link budget");
    model_options lb_model;
    double lb_depth = 0.0, lb_distance = 0.0, lb_pt = 0.0, lb_sensitivity = -90.0;
    double lb_margin = 0.0;
    ivchan_antenna lb_tx = {1.0, 0.0}, lb_rx = {1.0, 0.0};
    bool lb_shadowing = false;
    std::uint64_t lb_seed = 0;
    output_options lb_out;
    lb_model.attach(linkbudget);
    linkbudget->add_option("--depth-mm", lb_depth, "Depth in mm")->required();
    linkbudget->add_option("--distance-m", lb_distance, "External free-space distance, m")
        ->required();
    linkbudget->add_option("--pt-dbm", lb_pt, "Transmit power, dBm")->required();
    linkbudget->add_option("--sensitivity-dbm", lb_sensitivity, "Receiver sensitivity, dBm")
        ->required();
    linkbudget->add_option("--margin-db", lb_margin, "Extra margin for the required-power row");
    linkbudget->add_option("--tx-gain", lb_tx.gain_linear, "Transmit antenna gain, linear");
    linkbudget->add_option("--tx-refl", lb_tx.reflection_coeff_mag, "Transmit |S11|");
    linkbudget->add_option("--rx-gain", lb_rx.gain_linear, "Receive antenna gain, linear");
    linkbudget->add_option("--rx-refl", lb_rx.reflection_coeff_mag, "Receive |S22|");
    linkbudget->add_flag("--shadowing", lb_shadowing, "Add one seeded shadowing draw");
    auto *lb_seed_opt = linkbudget->add_option("--seed", lb_seed, "Random seed for --shadowing");
    lb_out.attach(linkbudget);

    // pdp
    auto *pdp = app.add_subcommand("pdp", "Power delay profile of a measured sweep");
    sweep_options pdp_sweep;
    output_options pdp_out;
    pdp_sweep.attach(pdp);
    pdp_out.attach(pdp);

    // stats
    auto *stats = app.add_subcommand("stats", "Dispersion statistics of a measured sweep");
    sweep_options stats_sweep;
    std::string stats_signal_bw;
    output_options stats_out;
    stats_sweep.attach(stats);
    stats->add_option("--signal-bw", stats_signal_bw,
                      "Signal bandwidth (e.g. 5MHz); adds a classification record");
    stats_out.attach(stats);

    // classify
    auto *classify = app.add_subcommand("classify", "Flat or frequency selective");
    std::string cls_signal_bw, cls_bc;
    double cls_sigma_ns = 0.0;
    output_options cls_out;
    classify->add_option("--signal-bw", cls_signal_bw, "Signal bandwidth (e.g. 500MHz)")
        ->required();
    auto *cls_bc_opt = classify->add_option("--bc", cls_bc, "Coherence bandwidth (e.g. 7.25MHz)");
    auto *cls_sigma_opt =
        classify->add_option("--sigma-tau-ns", cls_sigma_ns, "RMS delay spread, ns");
    cls_bc_opt->excludes(cls_sigma_opt);
    cls_out.attach(classify);

    for (CLI::App *sub : app.get_subcommands({}))
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (app.got_subcommand(ingest))
            run_ingest(ingest_csv, ingest_strict, ingest_out);
        else if (app.got_subcommand(fit))
            run_fit(fit_csv, fit_strict, fit_group, fit_out);
        else if (app.got_subcommand(compare))
            run_compare(cmp_csv, cmp_strict, cmp_group, cmp_a, cmp_b, cmp_out);
        else if (app.got_subcommand(predict))
            run_predict(predict_model, predict_depths, predict_out);
        else if (app.got_subcommand(sample))
            run_sample(sample_model, sample_depth, sample_n, sample_seed, sample_out);
        else if (app.got_subcommand(outage))
            run_outage(outage_model, outage_depth, outage_max_pl, outage_out);
        else if (app.got_subcommand(montecarlo))
            run_montecarlo(mc_model, mc_depth, mc_n, mc_seed, mc_threshold, mc_workers, mc_out);
        else if (app.got_subcommand(linkbudget))
            run_linkbudget(lb_model, lb_depth, lb_distance, lb_pt, lb_sensitivity, lb_margin,
                           lb_tx, lb_rx, lb_shadowing, lb_seed_opt->count() > 0, lb_seed, lb_out);
        else if (app.got_subcommand(pdp))
            run_pdp(pdp_sweep, pdp_out);
        else if (app.got_subcommand(stats))
            run_stats(stats_sweep, stats_signal_bw, stats_out);
        else if (app.got_subcommand(classify))
        {
            if (cls_bc.empty() && cls_sigma_opt->count() == 0)
                throw run_error{2, "classify needs --bc or --sigma-tau-ns"};
            run_classify(cls_signal_bw, cls_bc, cls_sigma_ns, cls_out);
        }
    }
    catch (const run_error &e)
    {
        std::cerr << "ivchan: " << e.message << "\n";
        return e.exit_code;
    }
    return 0;
}
