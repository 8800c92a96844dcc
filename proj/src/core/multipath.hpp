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

#ifndef ivchan_core_multipath_H
#define ivchan_core_multipath_H

#include <complex>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ivchan
{

// Uniformly gridded complex S21 sweep (channel transfer function).
struct frequency_response
{
    double f_start_hz = 0.0;
    double f_step_hz = 0.0;
    std::vector<std::complex<double>> samples;
};

enum class window_kind
{
    rectangular,
    hann,
};

struct impulse_response
{
    double t_step_s = 0.0; // 1 / (padded length * f_step_hz)
    std::vector<std::complex<double>> taps;
};

struct pdp_entry
{
    double delay_s;
    double power; // linear, unit total after normalization
};

struct power_delay_profile
{
    std::vector<pdp_entry> entries; // delays strictly increasing from 0
    bool normalized = false;
};

struct multipath_stats
{
    double mean_excess_delay_s = 0.0;
    double rms_delay_spread_s = 0.0;
    double coherence_bw_hz = 0.0; // meaningful only when bc_valid
    bool bc_valid = false;        // false when the profile has no dispersion
};

enum class channel_kind
{
    flat,
    frequency_selective,
};

// Band-average path loss from an S21 sweep, as the negated arithmetic mean
// of 20*log10|S21| over the grid. A zero-magnitude sample has no dB value
// and is rejected.
double path_loss_from_s21(const frequency_response &fr);

// Windowed, zero-padded inverse DFT of the sweep. With N input samples and
// padded length M = N * zero_pad_factor:
//   h[k] = (1/sqrt(M*N)) * sum_n w[n] S[n] exp(+j 2 pi n k / M)
// so the rectangular window satisfies sum|h|^2 == sum|S|^2 / N exactly
// (Parseval) and tap spacing is 1/(M * f_step).
impulse_response compute_impulse_response(const frequency_response &fr, window_kind window,
                                          int zero_pad_factor);

// |h|^2 gated at noise_floor_db_below_peak under the peak tap, renormalized
// to unit total power. The delay axis of an inverse DFT is circular with
// period 1/f_step, so bins are first unwrapped to signed offsets around the
// peak; delays are then re-referenced so the first retained tap sits at 0 s.
power_delay_profile compute_power_delay_profile(const impulse_response &ir,
                                                double noise_floor_db_below_peak);

// Power-weighted first moment of the delay axis.
double mean_excess_delay(const power_delay_profile &pdp);

// Power-weighted standard deviation of the delay axis:
// sqrt(second moment - first moment^2).
double rms_delay_spread(const power_delay_profile &pdp);

// 90% coherence bandwidth estimate, 1 / (50 * sigma_tau).
double coherence_bandwidth(double sigma_tau_s);

// Flat iff the signal bandwidth is strictly below the coherence bandwidth.
channel_kind classify_channel(double signal_bw_hz, double bc_hz);

const char *channel_kind_name(channel_kind kind);

// All three dispersion statistics of a profile in one pass. bc_valid is
// false (and coherence_bw_hz 0) when sigma_tau is 0.
multipath_stats stats_from_pdp(const power_delay_profile &pdp);

// S21(f) = sum_i gain_i * exp(-j 2 pi f delay_i) on a uniform grid; the
// forward counterpart of compute_impulse_response, for round trips.
frequency_response synthesize_frequency_response(
    const std::vector<std::pair<double, std::complex<double>>> &taps, double f_start_hz,
    double f_step_hz, int n_points);

} // namespace ivchan

#endif
