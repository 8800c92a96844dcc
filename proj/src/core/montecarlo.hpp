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

#ifndef ivchan_core_montecarlo_H
#define ivchan_core_montecarlo_H

#include <cstddef>
#include <cstdint>

#include "path_loss.hpp"

namespace ivchan
{

struct mc_summary
{
    std::size_t n_trials = 0;
    std::uint64_t seed = 0;
    double threshold_db = 0.0;
    double mean_pl_db = 0.0;
    double variance_db2 = 0.0; // unbiased, 0 for a single trial
    double min_pl_db = 0.0;
    double max_pl_db = 0.0;
    double outage_rate = 0.0;  // fraction of trials with PL > threshold
};

// Draws n_trials shadowed path loss samples at one depth and summarizes
// them. Trial i always uses the generator derived from (seed, i) and the
// reduction runs in trial order, so the summary is bit-identical for any
// worker count. workers = 0 picks the hardware concurrency.
mc_summary run_monte_carlo(const path_loss_params &params, const shadowing_profile &profile,
                           double depth_mm, std::size_t n_trials, std::uint64_t seed,
                           double threshold_db, unsigned workers);

} // namespace ivchan

#endif
