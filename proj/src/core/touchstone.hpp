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

#ifndef ivchan_core_touchstone_H
#define ivchan_core_touchstone_H

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "multipath.hpp"

namespace ivchan
{

enum class touchstone_format
{
    ri, // real imaginary
    ma, // magnitude angle-in-degrees
    db, // 20*log10 magnitude, angle-in-degrees
};

// A Touchstone v1 two-port sweep. Rows hold S11 S21 S12 S22 in standard v1
// order, normalized to complex regardless of the file's number format.
struct touchstone_sweep
{
    touchstone_format format = touchstone_format::ma; // format of the source file
    double freq_unit_hz = 1e9;                        // multiplier of the file's frequency column
    double reference_ohms = 50.0;
    std::vector<double> freq_hz; // strictly increasing, already scaled to Hz
    std::vector<std::array<std::complex<double>, 4>> sparams;

    // S21 sweep on a uniform grid; rejects non-uniform spacing (relative
    // step deviation above 1e-6) since the inverse-DFT pipeline needs it.
    frequency_response s21() const;
};

// Parses Touchstone v1 two-port text. Comment text after '!' is ignored,
// the option line may appear once before the data and defaults to
// "# GHZ S MA R 50", and v2 keyword lines ([Version] etc.) are rejected.
// Errors carry 1-based line numbers.
touchstone_sweep parse_touchstone(const std::string &text);

// Serializes a sweep in the requested format with round-trip precision:
// frequencies in Hz and 17 significant digits throughout, so
// parse(write(parse(x))) reproduces parse(x) exactly in RI and to 1e-15
// relative in MA/DB.
std::string write_touchstone(const touchstone_sweep &sweep, touchstone_format format);

} // namespace ivchan

#endif
