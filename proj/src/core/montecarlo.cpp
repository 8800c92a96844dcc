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

#include "montecarlo.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace ivchan
{

mc_summary run_monte_carlo(const path_loss_params &params, const shadowing_profile &profile,
                           double depth_mm, std::size_t n_trials, std::uint64_t seed,
                           double threshold_db, unsigned workers)
{
    if (n_trials < 1)
        fail(errc::invalid_argument, "Monte Carlo needs at least 1 trial");
    // Validate up front so worker threads cannot throw.
    (void)mean_path_loss(params, depth_mm);
    (void)profile.variance_at(depth_mm);

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<std::size_t>({workers, n_trials, 64}));

    std::vector<double> samples(n_trials);
    auto fill = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; i++)
        {
            rng gen = rng::for_trial(seed, i);
            samples[i] = sample_path_loss(params, profile, depth_mm, gen);
        }
    };
    if (workers <= 1)
        fill(0, n_trials);
    else
    {
        std::vector<std::thread> pool;
        std::size_t chunk = (n_trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; w++)
        {
            std::size_t lo = std::size_t(w) * chunk;
            std::size_t hi = std::min(lo + chunk, n_trials);
            if (lo >= hi)
                break;
            pool.emplace_back(fill, lo, hi);
        }
        for (auto &t : pool)
            t.join();
    }

    // Sequential reduction in trial order keeps the summary independent of
    // how the fill was split across threads.
    mc_summary out;
    out.n_trials = n_trials;
    out.seed = seed;
    out.threshold_db = threshold_db;
    double sum = 0.0;
    out.min_pl_db = samples[0];
    out.max_pl_db = samples[0];
    std::size_t exceed = 0;
    for (double s : samples)
    {
        sum += s;
        out.min_pl_db = std::min(out.min_pl_db, s);
        out.max_pl_db = std::max(out.max_pl_db, s);
        if (s > threshold_db)
            exceed++;
    }
    out.mean_pl_db = sum / double(n_trials);
    double ss = 0.0;
    for (double s : samples)
        ss += (s - out.mean_pl_db) * (s - out.mean_pl_db);
    out.variance_db2 = n_trials > 1 ? ss / double(n_trials - 1) : 0.0;
    out.outage_rate = double(exceed) / double(n_trials);
    return out;
}

} // namespace ivchan
