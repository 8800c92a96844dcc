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

#ifndef ivchan_core_errors_H
#define ivchan_core_errors_H

#include <stdexcept>
#include <string>

namespace ivchan
{

// Numeric values are part of the shared-library ABI; they must stay in sync
// with the IVCHAN_E_* constants in include/ivchan/ivchan.h.
enum class errc : int
{
    ok = 0,
    invalid_argument = 1,
    depth_out_of_range = 2,
    empty_profile = 3,
    non_positive_distance = 4,
    empty_response = 5,
    zero_magnitude_sample = 6,
    all_taps_below_floor = 7,
    zero_total_power = 8,
    non_positive_delay_spread = 9,
    insufficient_data = 10,
    degenerate_depths = 11,
    zero_slope_denominator = 12,
    malformed_option_line = 13,
    non_monotonic_frequency = 14,
    non_uniform_grid = 15,
    row_arity = 16,
    missing_column = 17,
    value_out_of_range = 18,
    empty_file = 19,
    duplicate_key = 20,
    missing_required_field = 21,
    unknown_context = 22,
    unsupported_version = 23,
    parse = 24,
    io = 25,
    internal = 26,
};

class error : public std::runtime_error
{
  public:
    error(errc code, const std::string &message) : std::runtime_error(message), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string &message)
{
    throw error(code, message);
}

inline const char *errc_name(errc code) noexcept
{
    switch (code)
    {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid argument";
    case errc::depth_out_of_range: return "depth out of range";
    case errc::empty_profile: return "empty shadowing profile";
    case errc::non_positive_distance: return "non-positive distance";
    case errc::empty_response: return "empty frequency response";
    case errc::zero_magnitude_sample: return "zero-magnitude sample";
    case errc::all_taps_below_floor: return "all taps below noise floor";
    case errc::zero_total_power: return "zero total power";
    case errc::non_positive_delay_spread: return "non-positive delay spread";
    case errc::insufficient_data: return "insufficient data";
    case errc::degenerate_depths: return "degenerate depths";
    case errc::zero_slope_denominator: return "zero slope denominator";
    case errc::malformed_option_line: return "malformed option line";
    case errc::non_monotonic_frequency: return "non-monotonic frequency";
    case errc::non_uniform_grid: return "non-uniform frequency grid";
    case errc::row_arity: return "wrong number of values in row";
    case errc::missing_column: return "missing column";
    case errc::value_out_of_range: return "value out of range";
    case errc::empty_file: return "empty file";
    case errc::duplicate_key: return "duplicate key";
    case errc::missing_required_field: return "missing required field";
    case errc::unknown_context: return "unknown band/context";
    case errc::unsupported_version: return "unsupported file version";
    case errc::parse: return "parse error";
    case errc::io: return "i/o error";
    case errc::internal: return "internal error";
    }
    return "unknown error";
}

} // namespace ivchan

#endif
