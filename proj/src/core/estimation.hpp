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

#ifndef ivchan_core_estimation_H
#define ivchan_core_estimation_H

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "path_loss.hpp"

namespace ivchan
{

enum class data_source
{
    simulation,
    experiment,
};

data_source source_from_string(const std::string &text);
const char *source_name(data_source source);

struct measurement_record
{
    anatomical_context context;
    frequency_band band;
    double depth_mm = 0.0;
    double pl_db = 0.0;
    data_source source = data_source::simulation;
};

struct measurement_dataset
{
    std::vector<measurement_record> records;
    std::string provenance_file;
    std::string provenance_date; // as recorded in the input, never the clock
};

struct fit_result
{
    std::string group_key;
    double pl0_db = 0.0;
    double m_db = 0.0;
    double d0_mm = 10.0;
    double r_squared = 0.0;
    std::size_t n_samples = 0;
    shadowing_profile residual_profile; // per-depth-bin residual variance
    std::vector<std::string> warnings;  // bins omitted for lack of data
};

struct comparison_report
{
    std::string key_a;
    std::string key_b;
    double decay_rate_ratio = 0.0; // m_a / m_b
    double delta_pl0_db = 0.0;     // pl0_a - pl0_b
    struct depth_delta
    {
        double depth_mm;
        double delta_db; // mean PL of a minus mean PL of b
    };
    std::vector<depth_delta> per_depth;
};

struct depth_mean
{
    double depth_mm;
    double mean_pl_db;
    std::size_t count;
};

struct group_means
{
    std::string group_key;
    std::vector<depth_mean> rows;
};

// Maps a record to its group key; an empty key excludes the record from the
// grouping (e.g. records without a direction label when grouping by
// direction).
using grouping_fn = std::function<std::string(const measurement_record &)>;

// Canned grouping selectors by name: band, region, direction, source,
// band_region, band_direction, band_source, all.
grouping_fn grouping_by_name(const std::string &name);

// Per-group ordinary least squares of pl_db against depth/d0. Results are
// sorted by group key. Each group needs at least 2 records spanning at
// least 2 distinct depths. The residual profile holds the unbiased sample
// variance of fit residuals per 10 mm depth bin; bins with fewer than 2
// records are omitted with a warning.
std::vector<fit_result> fit_path_loss(const measurement_dataset &dataset,
                                      const grouping_fn &grouping, double d0_mm = 10.0);

// Depth-binned residual variance of a dataset against an existing fit.
// Off-grid depths fall into the nearest 10 mm bin.
shadowing_profile shadowing_variance_by_depth(const std::vector<measurement_record> &records,
                                              const fit_result &fit,
                                              std::vector<std::string> *warnings = nullptr);

comparison_report compare_models(const fit_result &fit_a, const fit_result &fit_b);

// Arithmetic mean of pl_db per (group, exact depth); groups and depths
// sorted ascending.
std::vector<group_means> empirical_mean_pl_by_depth(const measurement_dataset &dataset,
                                                    const grouping_fn &grouping);

} // namespace ivchan

#endif
