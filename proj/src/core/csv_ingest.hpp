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

#ifndef ivchan_core_csv_ingest_H
#define ivchan_core_csv_ingest_H

#include <cstddef>
#include <string>
#include <vector>

#include "estimation.hpp"

namespace ivchan
{

// Column names of a measurement CSV. The header must contain the region,
// depth, band and path loss columns; direction and source are optional
// (missing source defaults to simulation).
struct csv_schema
{
    std::string region_col = "region";
    std::string direction_col = "direction";
    std::string depth_col = "depth_mm";
    std::string band_col = "band";
    std::string pl_col = "pl_db";
    std::string source_col = "source";
};

struct csv_skip
{
    std::size_t line; // 1-based input line
    std::string reason;
};

struct csv_result
{
    measurement_dataset dataset;
    std::vector<csv_skip> skipped; // populated in lenient mode only
};

// Parses comma-separated measurement records (no quoting; cells are
// trimmed). In strict mode the first bad row raises its error with the
// line number; in lenient mode bad rows are skipped and reported.
csv_result parse_csv_measurements(const std::string &text, const csv_schema &schema, bool strict);

} // namespace ivchan

#endif
