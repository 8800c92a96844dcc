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

#include "csv_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace ivchan
{

static std::string trim(const std::string &text)
{
    std::size_t first = 0, last = text.size();
    while (first < last && std::isspace((unsigned char)text[first]))
        first++;
    while (last > first && std::isspace((unsigned char)text[last - 1]))
        last--;
    return text.substr(first, last - first);
}

static std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line)
    {
        if (c == ',')
        {
            cells.push_back(trim(cell));
            cell.clear();
        }
        else
            cell += c;
    }
    cells.push_back(trim(cell));
    return cells;
}

static double parse_number(const std::string &cell, const std::string &what)
{
    const char *begin = cell.c_str();
    const char *end = begin + cell.size();
    if (begin != end && *begin == '+')
        begin++;
    double out = 0.0;
    auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end)
        fail(errc::parse, what + " '" + cell + "' is not a number");
    return out;
}

static std::string lower(const std::string &text)
{
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

csv_result parse_csv_measurements(const std::string &text, const csv_schema &schema, bool strict)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    std::vector<std::string> header;
    while (std::getline(in, line))
    {
        lineno++;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;
        header = split_csv(line);
        break;
    }
    if (header.empty())
        fail(errc::empty_file, "measurement CSV has no content");

    auto column = [&](const std::string &name) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < header.size(); i++)
            if (lower(header[i]) == lower(name))
                return std::ptrdiff_t(i);
        return -1;
    };
    auto required = [&](const std::string &name) -> std::size_t {
        std::ptrdiff_t idx = column(name);
        if (idx < 0)
            fail(errc::missing_column, "header is missing required column '" + name + "'");
        return std::size_t(idx);
    };

    std::size_t region_idx = required(schema.region_col);
    std::size_t depth_idx = required(schema.depth_col);
    std::size_t band_idx = required(schema.band_col);
    std::size_t pl_idx = required(schema.pl_col);
    std::ptrdiff_t direction_idx = column(schema.direction_col);
    std::ptrdiff_t source_idx = column(schema.source_col);

    csv_result result;
    auto parse_row = [&](const std::vector<std::string> &cells) -> measurement_record {
        if (cells.size() != header.size())
        {
            std::ostringstream msg;
            msg << "row has " << cells.size() << " cells, header has " << header.size();
            fail(errc::row_arity, msg.str());
        }
        measurement_record rec;
        try
        {
            rec.context.region = region_from_string(cells[region_idx]);
            rec.band = band_from_string(cells[band_idx]);
        }
        catch (const error &e)
        {
            // Unknown labels in a data cell are a value problem of the row,
            // not a missing model context.
            fail(errc::value_out_of_range, e.what());
        }
        rec.depth_mm = parse_number(cells[depth_idx], "depth");
        if (!(rec.depth_mm >= 10.0 && rec.depth_mm <= 100.0))
        {
            std::ostringstream msg;
            msg << "depth " << cells[depth_idx] << " mm outside the model validity range [10, 100] mm";
            fail(errc::value_out_of_range, msg.str());
        }
        rec.pl_db = parse_number(cells[pl_idx], "path loss");
        if (!std::isfinite(rec.pl_db))
            fail(errc::value_out_of_range, "path loss '" + cells[pl_idx] + "' is not finite");
        if (direction_idx >= 0)
            rec.context.direction = lower(cells[std::size_t(direction_idx)]);
        if (source_idx >= 0 && !cells[std::size_t(source_idx)].empty())
            rec.source = source_from_string(cells[std::size_t(source_idx)]);
        return rec;
    };

    std::size_t data_rows = 0;
    while (std::getline(in, line))
    {
        lineno++;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;
        data_rows++;
        try
        {
            result.dataset.records.push_back(parse_row(split_csv(line)));
        }
        catch (const error &e)
        {
            std::ostringstream msg;
            msg << "line " << lineno << ": " << e.what();
            if (strict)
                fail(e.code(), msg.str());
            result.skipped.push_back({lineno, e.what()});
        }
    }
    if (data_rows == 0)
        fail(errc::empty_file, "measurement CSV has a header but no data rows");
    return result;
}

} // namespace ivchan
