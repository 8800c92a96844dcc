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

#include "multipath.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>

#include "units.hpp"

namespace ivchan
{

double path_loss_from_s21(const frequency_response &fr)
{
    if (fr.samples.empty())
        fail(errc::empty_response, "frequency response has no samples");
    double sum_db = 0.0;
    for (std::size_t i = 0; i < fr.samples.size(); i++)
    {
        double mag = std::abs(fr.samples[i]);
        if (mag == 0.0)
        {
            std::ostringstream msg;
            msg << "sample " << i << " has zero magnitude, dB average undefined";
            fail(errc::zero_magnitude_sample, msg.str());
        }
        sum_db += db_from_magnitude(mag);
    }
    return -(sum_db / double(fr.samples.size()));
}

impulse_response compute_impulse_response(const frequency_response &fr, window_kind window,
                                          int zero_pad_factor)
{
    std::size_t n = fr.samples.size();
    if (n < 2)
        fail(errc::empty_response, "impulse response needs at least 2 frequency samples");
    if (!(fr.f_step_hz > 0.0))
        fail(errc::invalid_argument, "frequency step must be > 0 Hz");
    if (zero_pad_factor < 1)
        fail(errc::invalid_argument, "zero pad factor must be >= 1");

    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; i++)
    {
        double w = 1.0;
        if (window == window_kind::hann)
            w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(i) / double(n - 1));
        x[i] = w * fr.samples[i];
    }

    std::size_t m = n * std::size_t(zero_pad_factor);

    // Exact integer phase reduction (n*k mod m) keeps every twiddle angle in
    // [0, 2 pi); the direct sum costs O(n*m) but stays accurate enough for
    // the 1e-12 Parseval contract, which an accumulated-rotation scheme
    // would not guarantee.
    std::vector<std::complex<double>> roots(m);
    for (std::size_t r = 0; r < m; r++)
        roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(m));

    impulse_response ir;
    ir.t_step_s = 1.0 / (double(m) * fr.f_step_hz);
    ir.taps.resize(m);
    double scale = 1.0 / std::sqrt(double(m) * double(n));
    for (std::size_t k = 0; k < m; k++)
    {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; i++)
            acc += x[i] * roots[(i * k) % m];
        ir.taps[k] = scale * acc;
    }
    return ir;
}

power_delay_profile compute_power_delay_profile(const impulse_response &ir,
                                                double noise_floor_db_below_peak)
{
    if (ir.taps.empty())
        fail(errc::empty_response, "impulse response has no taps");
    if (!(ir.t_step_s > 0.0))
        fail(errc::invalid_argument, "tap spacing must be > 0 s");
    if (!(noise_floor_db_below_peak > 0.0))
        fail(errc::invalid_argument, "noise floor threshold must be > 0 dB below peak");

    std::ptrdiff_t m = std::ptrdiff_t(ir.taps.size());
    std::vector<double> power(ir.taps.size());
    double peak = 0.0;
    std::ptrdiff_t k_peak = 0;
    for (std::ptrdiff_t k = 0; k < m; k++)
    {
        power[std::size_t(k)] = std::norm(ir.taps[std::size_t(k)]);
        if (power[std::size_t(k)] > peak)
        {
            peak = power[std::size_t(k)];
            k_peak = k;
        }
    }
    if (peak == 0.0)
        fail(errc::zero_total_power, "impulse response carries no power");

    double cutoff = peak * power_from_db(-noise_floor_db_below_peak);

    // The inverse DFT delay axis is circular with period 1/f_step; a tap
    // near delay 0 leaks sidelobe energy into the top bins. Unwrapping bin
    // indices to signed offsets around the peak keeps that energy adjacent
    // to its tap instead of at the far end of the window.
    std::vector<std::pair<std::ptrdiff_t, double>> kept;
    for (std::ptrdiff_t k = 0; k < m; k++)
    {
        if (power[std::size_t(k)] < cutoff)
            continue;
        std::ptrdiff_t off = (k - k_peak + m + m / 2) % m - m / 2;
        kept.emplace_back(off, power[std::size_t(k)]);
    }
    if (kept.empty())
        fail(errc::all_taps_below_floor, "no tap reaches the noise floor gate");
    std::sort(kept.begin(), kept.end());

    double total = 0.0;
    for (const auto &[off, p] : kept)
        total += p;
    if (total == 0.0)
        fail(errc::zero_total_power, "retained taps carry no power");

    power_delay_profile pdp;
    pdp.entries.reserve(kept.size());
    std::ptrdiff_t base = kept.front().first;
    for (const auto &[off, p] : kept)
        pdp.entries.push_back({double(off - base) * ir.t_step_s, p / total});
    pdp.normalized = true;
    return pdp;
}

static double total_power(const power_delay_profile &pdp)
{
    double total = 0.0;
    for (const auto &e : pdp.entries)
        total += e.power;
    return total;
}

double mean_excess_delay(const power_delay_profile &pdp)
{
    double total = total_power(pdp);
    if (pdp.entries.empty() || total == 0.0)
        fail(errc::zero_total_power, "power delay profile carries no power");
    double weighted = 0.0;
    for (const auto &e : pdp.entries)
        weighted += e.delay_s * e.power;
    return weighted / total;
}

double rms_delay_spread(const power_delay_profile &pdp)
{
    double total = total_power(pdp);
    if (pdp.entries.empty() || total == 0.0)
        fail(errc::zero_total_power, "power delay profile carries no power");
    double m1 = 0.0, m2 = 0.0;
    for (const auto &e : pdp.entries)
    {
        m1 += e.delay_s * e.power;
        m2 += e.delay_s * e.delay_s * e.power;
    }
    m1 /= total;
    m2 /= total;
    double variance = m2 - m1 * m1;
    if (variance < 0.0)
    {
        // Cancellation can round the difference of the two moments a hair
        // below zero; anything larger than rounding noise is a real bug.
        if (-variance <= 1e-15 * std::max(m2, m1 * m1))
            variance = 0.0;
        else
            fail(errc::internal, "negative delay variance beyond rounding tolerance");
    }
    return std::sqrt(variance);
}

double coherence_bandwidth(double sigma_tau_s)
{
    if (!(sigma_tau_s > 0.0))
        fail(errc::non_positive_delay_spread, "coherence bandwidth needs sigma_tau > 0");
    return 1.0 / (50.0 * sigma_tau_s);
}

channel_kind classify_channel(double signal_bw_hz, double bc_hz)
{
    if (!(signal_bw_hz > 0.0) || !(bc_hz > 0.0))
        fail(errc::invalid_argument, "bandwidths must be > 0 Hz");
    return signal_bw_hz < bc_hz ? channel_kind::flat : channel_kind::frequency_selective;
}

const char *channel_kind_name(channel_kind kind)
{
    return kind == channel_kind::flat ? "flat" : "frequency_selective";
}

multipath_stats stats_from_pdp(const power_delay_profile &pdp)
{
    multipath_stats out;
    out.mean_excess_delay_s = mean_excess_delay(pdp);
    out.rms_delay_spread_s = rms_delay_spread(pdp);
    out.bc_valid = out.rms_delay_spread_s > 0.0;
    out.coherence_bw_hz = out.bc_valid ? coherence_bandwidth(out.rms_delay_spread_s) : 0.0;
    return out;
}

frequency_response synthesize_frequency_response(
    const std::vector<std::pair<double, std::complex<double>>> &taps, double f_start_hz,
    double f_step_hz, int n_points)
{
    if (n_points < 2)
        fail(errc::invalid_argument, "synthesis needs at least 2 grid points");
    if (!(f_step_hz > 0.0))
        fail(errc::invalid_argument, "frequency step must be > 0 Hz");
    frequency_response fr;
    fr.f_start_hz = f_start_hz;
    fr.f_step_hz = f_step_hz;
    fr.samples.resize(std::size_t(n_points));
    for (int i = 0; i < n_points; i++)
    {
        double f = f_start_hz + double(i) * f_step_hz;
        std::complex<double> acc = 0.0;
        for (const auto &[delay, gain] : taps)
            acc += gain * std::polar(1.0, -2.0 * std::numbers::pi * f * delay);
        fr.samples[std::size_t(i)] = acc;
    }
    return fr;
}

} // namespace ivchan
