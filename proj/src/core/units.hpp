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

#ifndef ivchan_core_units_H
#define ivchan_core_units_H

#include <cmath>

namespace ivchan
{

constexpr double speed_of_light_mps = 299792458.0;

// Power ratios use 10*log10, field/magnitude ratios use 20*log10.
inline double db_from_power(double ratio) { return 10.0 * std::log10(ratio); }
inline double power_from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double db_from_magnitude(double mag) { return 20.0 * std::log10(mag); }
inline double magnitude_from_db(double db) { return std::pow(10.0, db / 20.0); }

inline double dbm_from_watts(double watts) { return 10.0 * std::log10(watts * 1e3); }
inline double watts_from_dbm(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

inline double wavelength_m(double frequency_hz) { return speed_of_light_mps / frequency_hz; }

} // namespace ivchan

#endif
