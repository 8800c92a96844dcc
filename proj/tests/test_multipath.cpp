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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "../src/core/multipath.hpp"
#include "../src/core/rng.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace ivchan;
using testutil::code_of;
using testutil::message_of;
using cplx = std::complex<double>;

static constexpr double pi = 3.14159265358979323846;

static frequency_response flat_response(std::size_t n, double magnitude)
{
    frequency_response fr;
    fr.f_start_hz = 905e6;
    fr.f_step_hz = 100e3;
    fr.samples.assign(n, cplx(magnitude, 0.0));
    return fr;
}

TEST_CASE("band-average path loss from S21")
{
    SUBCASE("uniform -20 dB sweep")
    {
        CHECK(path_loss_from_s21(flat_response(11, 0.1)) == doctest::Approx(20.0).epsilon(1e-13));
    }
    SUBCASE("unit magnitude sweep has zero loss")
    {
        CHECK(path_loss_from_s21(flat_response(5, 1.0)) == doctest::Approx(0.0).epsilon(1e-13));
    }
    SUBCASE("averaging happens in dB")
    {
        frequency_response fr = flat_response(2, 0.1);
        fr.samples[1] = cplx(0.001, 0.0); // -60 dB; dB mean of {20, 60} is 40
        CHECK(path_loss_from_s21(fr) == doctest::Approx(40.0).epsilon(1e-13));
    }
    SUBCASE("phase does not matter")
    {
        frequency_response fr = flat_response(8, 0.1);
        for (std::size_t i = 0; i < fr.samples.size(); i++)
            fr.samples[i] = std::polar(0.1, 0.77 * double(i));
        CHECK(path_loss_from_s21(fr) == doctest::Approx(20.0).epsilon(1e-12));
    }
    SUBCASE("empty sweep is rejected")
    {
        frequency_response fr;
        CHECK(code_of([&] { path_loss_from_s21(fr); }) == errc::empty_response);
    }
    SUBCASE("zero-magnitude sample is rejected and located")
    {
        frequency_response fr = flat_response(4, 0.1);
        fr.samples[2] = cplx(0.0, 0.0);
        CHECK(code_of([&] { path_loss_from_s21(fr); }) == errc::zero_magnitude_sample);
        CHECK(message_of([&] { path_loss_from_s21(fr); }).find("2") != std::string::npos);
    }
}

TEST_CASE("inverse transform of a flat spectrum concentrates at delay zero")
{
    frequency_response fr = flat_response(32, 1.0);
    impulse_response ir = compute_impulse_response(fr, window_kind::rectangular, 1);
    REQUIRE(ir.taps.size() == 32);
    CHECK(ir.t_step_s == doctest::Approx(1.0 / (32.0 * 100e3)).epsilon(1e-15));
    CHECK(std::abs(ir.taps[0]) == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t k = 1; k < ir.taps.size(); k++)
        CHECK(std::abs(ir.taps[k]) < 1e-12);
}

TEST_CASE("inverse transform shift property")
{
    // S[n] = exp(-j 2 pi n k0 / N) concentrates all power in tap k0 when the
    // transform length equals the sweep length.
    const std::size_t n = 48;
    const std::size_t k0 = 13;
    frequency_response fr = flat_response(n, 1.0);
    for (std::size_t i = 0; i < n; i++)
        fr.samples[i] = std::polar(1.0, -2.0 * pi * double(i) * double(k0) / double(n));
    impulse_response ir = compute_impulse_response(fr, window_kind::rectangular, 1);
    REQUIRE(ir.taps.size() == n);
    CHECK(std::abs(ir.taps[k0]) == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t k = 0; k < n; k++)
        if (k != k0)
            CHECK(std::abs(ir.taps[k]) < 1e-12);
}

TEST_CASE("rectangular window preserves energy through the transform")
{
    rng gen(2026);
    for (int pad : {1, 2, 4, 8})
    {
        frequency_response fr;
        fr.f_start_hz = 905e6;
        fr.f_step_hz = 100e3;
        double in_energy = 0.0;
        for (int i = 0; i < 201; i++)
        {
            cplx s(gen.next_normal(), gen.next_normal());
            fr.samples.push_back(s);
            in_energy += std::norm(s);
        }
        impulse_response ir = compute_impulse_response(fr, window_kind::rectangular, pad);
        REQUIRE(ir.taps.size() == fr.samples.size() * std::size_t(pad));
        double out_energy = 0.0;
        for (const cplx &tap : ir.taps)
            out_energy += std::norm(tap);
        CHECK(std::abs(out_energy - in_energy / 201.0) <= 1e-12 * (in_energy / 201.0));
    }
}

TEST_CASE("Hann window attenuates the sweep edges")
{
    frequency_response fr = flat_response(64, 1.0);
    impulse_response rect = compute_impulse_response(fr, window_kind::rectangular, 4);
    impulse_response hann = compute_impulse_response(fr, window_kind::hann, 4);
    double rect_energy = 0.0, hann_energy = 0.0;
    for (const cplx &tap : rect.taps)
        rect_energy += std::norm(tap);
    for (const cplx &tap : hann.taps)
        hann_energy += std::norm(tap);
    CHECK(hann_energy < rect_energy);
    CHECK(hann_energy > 0.0);
}

TEST_CASE("transform input validation")
{
    frequency_response fr = flat_response(1, 1.0);
    CHECK(code_of([&] { compute_impulse_response(fr, window_kind::rectangular, 1); }) ==
          errc::empty_response);
    frequency_response ok = flat_response(4, 1.0);
    frequency_response bad_step = ok;
    bad_step.f_step_hz = 0.0;
    CHECK(code_of([&] { compute_impulse_response(bad_step, window_kind::rectangular, 1); }) ==
          errc::invalid_argument);
    CHECK(code_of([&] { compute_impulse_response(ok, window_kind::rectangular, 0); }) ==
          errc::invalid_argument);
}

TEST_CASE("power delay profile from a single dominant tap")
{
    impulse_response ir;
    ir.t_step_s = 1e-9;
    ir.taps.assign(16, cplx(0.0, 0.0));
    ir.taps[3] = cplx(0.5, 0.0);
    power_delay_profile pdp = compute_power_delay_profile(ir, 30.0);
    REQUIRE(pdp.entries.size() == 1);
    CHECK(pdp.entries[0].delay_s == 0.0);
    CHECK(pdp.entries[0].power == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pdp.normalized);
}

TEST_CASE("power delay profile gates taps below the floor")
{
    impulse_response ir;
    ir.t_step_s = 1e-9;
    ir.taps.assign(32, cplx(0.0, 0.0));
    ir.taps[2] = cplx(1.0, 0.0);       // 0 dB peak
    ir.taps[5] = cplx(0.1, 0.0);       // -20 dB, retained at a 30 dB gate
    ir.taps[9] = cplx(0.003, 0.0);     // about -50 dB, gated out
    power_delay_profile pdp = compute_power_delay_profile(ir, 30.0);
    REQUIRE(pdp.entries.size() == 2);
    CHECK(pdp.entries[0].delay_s == doctest::Approx(0.0));
    CHECK(pdp.entries[1].delay_s == doctest::Approx(3e-9).epsilon(1e-12));
    double total = pdp.entries[0].power + pdp.entries[1].power;
    CHECK(std::abs(total - 1.0) <= 1e-9);
    CHECK(pdp.entries[0].power == doctest::Approx(1.0 / 1.01).epsilon(1e-12));
    CHECK(pdp.entries[1].power == doctest::Approx(0.01 / 1.01).epsilon(1e-12));
}

TEST_CASE("taps exactly at the gate threshold are retained")
{
    impulse_response ir;
    ir.t_step_s = 1e-9;
    ir.taps.assign(8, cplx(0.0, 0.0));
    ir.taps[0] = cplx(1.0, 0.0);
    ir.taps[1] = cplx(0.1, 0.0); // exactly -20 dB
    power_delay_profile pdp = compute_power_delay_profile(ir, 20.0);
    CHECK(pdp.entries.size() == 2);
}

TEST_CASE("delay axis unwraps around the circular transform boundary")
{
    // The inverse DFT delay axis is periodic; energy landing in the last bin
    // belongs just before the peak at bin 0, not a full period after it.
    impulse_response ir;
    ir.t_step_s = 1e-9;
    ir.taps.assign(16, cplx(0.0, 0.0));
    ir.taps[0] = cplx(1.0, 0.0);
    ir.taps[15] = cplx(0.5, 0.0);
    power_delay_profile pdp = compute_power_delay_profile(ir, 30.0);
    REQUIRE(pdp.entries.size() == 2);
    // First retained tap is the wrapped one, re-referenced to 0 s; the peak
    // then sits one tap later, not 15 taps later.
    CHECK(pdp.entries[0].delay_s == 0.0);
    CHECK(pdp.entries[1].delay_s == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(pdp.entries[1].power > pdp.entries[0].power);
}

TEST_CASE("power delay profile input validation")
{
    impulse_response empty;
    empty.t_step_s = 1e-9;
    CHECK(code_of([&] { compute_power_delay_profile(empty, 30.0); }) == errc::empty_response);

    impulse_response silent;
    silent.t_step_s = 1e-9;
    silent.taps.assign(4, cplx(0.0, 0.0));
    CHECK(code_of([&] { compute_power_delay_profile(silent, 30.0); }) == errc::zero_total_power);

    impulse_response ir;
    ir.t_step_s = 1e-9;
    ir.taps.assign(4, cplx(1.0, 0.0));
    CHECK(code_of([&] { compute_power_delay_profile(ir, 0.0); }) == errc::invalid_argument);
    CHECK(code_of([&] { compute_power_delay_profile(ir, -3.0); }) == errc::invalid_argument);
}

static power_delay_profile make_pdp(std::vector<pdp_entry> entries)
{
    power_delay_profile pdp;
    pdp.entries = std::move(entries);
    return pdp;
}

TEST_CASE("delay moments of hand-built profiles")
{
    SUBCASE("single tap")
    {
        power_delay_profile pdp = make_pdp({{5e-9, 1.0}});
        CHECK(mean_excess_delay(pdp) == 5e-9);
        CHECK(rms_delay_spread(pdp) == 0.0);
    }
    SUBCASE("two equal taps")
    {
        power_delay_profile pdp = make_pdp({{0.0, 0.5}, {2e-9, 0.5}});
        CHECK(mean_excess_delay(pdp) == doctest::Approx(1e-9).epsilon(1e-15));
        CHECK(rms_delay_spread(pdp) == doctest::Approx(1e-9).epsilon(1e-15));
    }
    SUBCASE("three-to-one power split")
    {
        power_delay_profile pdp = make_pdp({{0.0, 0.75}, {4e-9, 0.25}});
        CHECK(mean_excess_delay(pdp) == doctest::Approx(1e-9).epsilon(1e-15));
        CHECK(rms_delay_spread(pdp) ==
              doctest::Approx(std::sqrt(3.0) * 1e-9).epsilon(1e-15));
    }
    SUBCASE("agrees with the long-double oracle on an irregular profile")
    {
        std::vector<std::pair<double, double>> ref = {
            {0.0, 0.31}, {1.7e-9, 0.22}, {4.4e-9, 0.19}, {9.1e-9, 0.17}, {22.5e-9, 0.11}};
        std::vector<pdp_entry> entries;
        for (const auto &[delay, power] : ref)
            entries.push_back({delay, power});
        power_delay_profile pdp = make_pdp(std::move(entries));
        auto m = oracles::tap_moments(ref);
        CHECK(mean_excess_delay(pdp) == doctest::Approx(m.mean_excess_s).epsilon(1e-14));
        CHECK(rms_delay_spread(pdp) == doctest::Approx(m.rms_spread_s).epsilon(1e-14));
    }
    SUBCASE("zero total power is rejected")
    {
        power_delay_profile pdp = make_pdp({{0.0, 0.0}, {1e-9, 0.0}});
        CHECK(code_of([&] { mean_excess_delay(pdp); }) == errc::zero_total_power);
        CHECK(code_of([&] { rms_delay_spread(pdp); }) == errc::zero_total_power);
        power_delay_profile empty;
        CHECK(code_of([&] { mean_excess_delay(empty); }) == errc::zero_total_power);
    }
}

TEST_CASE("delay moment invariances")
{
    power_delay_profile pdp =
        make_pdp({{0.0, 0.4}, {3e-9, 0.3}, {7e-9, 0.2}, {15e-9, 0.1}});
    double mean = mean_excess_delay(pdp);
    double spread = rms_delay_spread(pdp);

    SUBCASE("spread is invariant to a common delay offset")
    {
        for (double offset : {1e-9, 5e-9, 2e-8})
        {
            power_delay_profile shifted = pdp;
            for (pdp_entry &e : shifted.entries)
                e.delay_s += offset;
            CHECK(std::abs(rms_delay_spread(shifted) - spread) <= 1e-12 * spread);
            CHECK(mean_excess_delay(shifted) ==
                  doctest::Approx(mean + offset).epsilon(1e-13));
        }
    }
    SUBCASE("moments are invariant to a common power scale")
    {
        power_delay_profile scaled = pdp;
        for (pdp_entry &e : scaled.entries)
            e.power *= 37.5;
        CHECK(mean_excess_delay(scaled) == doctest::Approx(mean).epsilon(1e-14));
        CHECK(rms_delay_spread(scaled) == doctest::Approx(spread).epsilon(1e-14));
    }
    SUBCASE("mean excess delay lies inside the delay support")
    {
        CHECK(mean >= pdp.entries.front().delay_s);
        CHECK(mean <= pdp.entries.back().delay_s);
    }
}

TEST_CASE("coherence bandwidth")
{
    CHECK(coherence_bandwidth(2.76e-9) == doctest::Approx(7246376.811594203).epsilon(1e-15));
    CHECK(coherence_bandwidth(1e-9) == doctest::Approx(2e7).epsilon(1e-15));
    CHECK(coherence_bandwidth(2e-9) == doctest::Approx(1e7).epsilon(1e-15));
    CHECK(code_of([] { coherence_bandwidth(0.0); }) == errc::non_positive_delay_spread);
    CHECK(code_of([] { coherence_bandwidth(-1e-9); }) == errc::non_positive_delay_spread);

    SUBCASE("inverse relation holds exactly")
    {
        for (double sigma : {0.5e-9, 2.76e-9, 11e-9, 240e-9})
        {
            double bc = coherence_bandwidth(sigma);
            CHECK(std::abs(bc * 50.0 * sigma - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("channel classification")
{
    CHECK(classify_channel(5e6, 7.25e6) == channel_kind::flat);
    CHECK(classify_channel(10e6, 7.25e6) == channel_kind::frequency_selective);
    CHECK(classify_channel(7.25e6, 7.25e6) == channel_kind::frequency_selective);
    CHECK(std::string(channel_kind_name(channel_kind::flat)) == "flat");
    CHECK(std::string(channel_kind_name(channel_kind::frequency_selective)) ==
          "frequency_selective");
    CHECK(code_of([] { classify_channel(0.0, 1e6); }) == errc::invalid_argument);
    CHECK(code_of([] { classify_channel(1e6, 0.0); }) == errc::invalid_argument);
}

TEST_CASE("combined statistics of a profile")
{
    SUBCASE("dispersive profile")
    {
        power_delay_profile pdp = make_pdp({{0.0, 0.5}, {2e-9, 0.5}});
        multipath_stats st = stats_from_pdp(pdp);
        CHECK(st.mean_excess_delay_s == doctest::Approx(1e-9).epsilon(1e-15));
        CHECK(st.rms_delay_spread_s == doctest::Approx(1e-9).epsilon(1e-15));
        CHECK(st.bc_valid);
        CHECK(st.coherence_bw_hz == doctest::Approx(2e7).epsilon(1e-14));
    }
    SUBCASE("single tap has no meaningful coherence bandwidth")
    {
        power_delay_profile pdp = make_pdp({{0.0, 1.0}});
        multipath_stats st = stats_from_pdp(pdp);
        CHECK(st.rms_delay_spread_s == 0.0);
        CHECK_FALSE(st.bc_valid);
        CHECK(st.coherence_bw_hz == 0.0);
    }
}

TEST_CASE("synthesized sweeps")
{
    SUBCASE("single tap at zero delay gives a flat unit sweep")
    {
        frequency_response fr =
            synthesize_frequency_response({{0.0, cplx(1.0, 0.0)}}, 905e6, 100e3, 16);
        REQUIRE(fr.samples.size() == 16);
        for (const cplx &s : fr.samples)
        {
            CHECK(s.real() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(s.imag()) < 1e-12);
        }
    }
    SUBCASE("single delayed tap gives unit magnitude and linear phase")
    {
        double tau = 7e-9;
        frequency_response fr =
            synthesize_frequency_response({{tau, cplx(1.0, 0.0)}}, 905e6, 100e3, 8);
        for (std::size_t i = 0; i < fr.samples.size(); i++)
        {
            double f = 905e6 + double(i) * 100e3;
            cplx expect = std::polar(1.0, -2.0 * pi * f * tau);
            CHECK(std::abs(fr.samples[i] - expect) < 1e-12);
        }
    }
    SUBCASE("rejects degenerate grids")
    {
        CHECK(code_of([] {
                  synthesize_frequency_response({{0.0, cplx(1.0, 0.0)}}, 905e6, 100e3, 1);
              }) == errc::invalid_argument);
        CHECK(code_of([] {
                  synthesize_frequency_response({{0.0, cplx(1.0, 0.0)}}, 905e6, 0.0, 8);
              }) == errc::invalid_argument);
    }
}

TEST_CASE("synthesis and analysis round trip on grid-aligned taps")
{
    // Tap delays that are exact multiples of the unpadded delay resolution
    // come back bit-clean through synthesize -> transform -> profile.
    const int n = 64;
    const double f_step = 1e6;
    const double t_step = 1.0 / (double(n) * f_step);
    std::vector<std::pair<double, cplx>> taps = {
        {0.0, cplx(1.0, 0.0)}, {10.0 * t_step, cplx(0.6, 0.0)}, {25.0 * t_step, cplx(0.3, 0.0)}};

    frequency_response fr = synthesize_frequency_response(taps, 905e6, f_step, n);
    impulse_response ir = compute_impulse_response(fr, window_kind::rectangular, 1);
    power_delay_profile pdp = compute_power_delay_profile(ir, 60.0);

    REQUIRE(pdp.entries.size() == 3);
    CHECK(pdp.entries[0].delay_s == doctest::Approx(0.0));
    CHECK(pdp.entries[1].delay_s == doctest::Approx(10.0 * t_step).epsilon(1e-12));
    CHECK(pdp.entries[2].delay_s == doctest::Approx(25.0 * t_step).epsilon(1e-12));

    double total = 1.0 + 0.36 + 0.09;
    CHECK(pdp.entries[0].power == doctest::Approx(1.0 / total).epsilon(1e-10));
    CHECK(pdp.entries[1].power == doctest::Approx(0.36 / total).epsilon(1e-10));
    CHECK(pdp.entries[2].power == doctest::Approx(0.09 / total).epsilon(1e-10));

    auto m = oracles::gain_tap_moments(taps);
    multipath_stats st = stats_from_pdp(pdp);
    CHECK(st.mean_excess_delay_s == doctest::Approx(m.mean_excess_s).epsilon(1e-10));
    CHECK(st.rms_delay_spread_s == doctest::Approx(m.rms_spread_s).epsilon(1e-10));
}
