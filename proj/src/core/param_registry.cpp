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

#include "param_registry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace ivchan
{

namespace
{

std::string trim(const std::string &text)
{
    std::size_t first = 0, last = text.size();
    while (first < last && std::isspace((unsigned char)text[first]))
        first++;
    while (last > first && std::isspace((unsigned char)text[last - 1]))
        last--;
    return text.substr(first, last - first);
}

std::string lower(const std::string &text)
{
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

double parse_number(const std::string &cell, std::size_t lineno)
{
    const char *begin = cell.c_str();
    const char *end = begin + cell.size();
    if (begin != end && *begin == '+')
        begin++;
    double out = 0.0;
    auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end)
    {
        std::ostringstream msg;
        msg << "line " << lineno << ": '" << cell << "' is not a number";
        fail(errc::parse, msg.str());
    }
    return out;
}

struct model_section
{
    std::size_t lineno = 0;
    std::string key;        // registry key
    frequency_band band;
    bool by_direction = false;
    body_region region = body_region::whole_torso;
    std::string direction;
    std::map<std::string, std::pair<std::string, std::size_t>> values; // key -> (value, line)
};

} // namespace

param_registry param_registry::parse(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    std::vector<model_section> sections;
    std::map<std::string, shadowing_profile> tables;
    model_section *current_model = nullptr;
    shadowing_profile *current_table = nullptr;
    std::string current_table_name;

    while (std::getline(in, line))
    {
        lineno++;
        if (auto bang = line.find('!'); bang != std::string::npos)
            line.erase(bang);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[')
        {
            if (line.back() != ']')
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": unterminated section header";
                fail(errc::parse, msg.str());
            }
            std::istringstream head(line.substr(1, line.size() - 2));
            std::vector<std::string> tokens;
            std::string tok;
            while (head >> tok)
                tokens.push_back(tok);

            current_model = nullptr;
            current_table = nullptr;
            if (tokens.size() == 2 && lower(tokens[0]) == "table")
            {
                current_table_name = lower(tokens[1]);
                if (tables.count(current_table_name) != 0)
                {
                    std::ostringstream msg;
                    msg << "line " << lineno << ": table '" << tokens[1] << "' defined twice";
                    fail(errc::duplicate_key, msg.str());
                }
                current_table = &tables[current_table_name];
            }
            else if (tokens.size() == 4 && lower(tokens[0]) == "band" &&
                     (lower(tokens[2]) == "region" || lower(tokens[2]) == "direction"))
            {
                model_section section;
                section.lineno = lineno;
                try
                {
                    section.band = band_from_string(tokens[1]);
                    if (lower(tokens[2]) == "region")
                    {
                        section.region = region_from_string(tokens[3]);
                        section.key = std::string(band_name(section.band.label)) + "/region/" +
                                      region_name(section.region);
                    }
                    else
                    {
                        section.by_direction = true;
                        section.direction = lower(tokens[3]);
                        section.key = std::string(band_name(section.band.label)) + "/direction/" +
                                      section.direction;
                    }
                }
                catch (const error &e)
                {
                    std::ostringstream msg;
                    msg << "line " << lineno << ": " << e.what();
                    fail(e.code(), msg.str());
                }
                for (const auto &existing : sections)
                    if (existing.key == section.key)
                    {
                        std::ostringstream msg;
                        msg << "line " << lineno << ": duplicate parameter section ["
                            << "band " << tokens[1] << " " << lower(tokens[2]) << " " << tokens[3]
                            << "]";
                        fail(errc::duplicate_key, msg.str());
                    }
                sections.push_back(std::move(section));
                current_model = &sections.back();
            }
            else
            {
                std::ostringstream msg;
                msg << "line " << lineno
                    << ": section header must be [band <band> region|direction <name>] or "
                       "[table <name>]";
                fail(errc::parse, msg.str());
            }
            continue;
        }

        if (current_table != nullptr)
        {
            std::istringstream row(line);
            std::vector<std::string> cells;
            std::string cell;
            while (row >> cell)
                cells.push_back(cell);
            if (cells.size() != 2)
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": table row needs 'depth_mm variance_db2', got "
                    << cells.size() << " value(s)";
                fail(errc::row_arity, msg.str());
            }
            double depth = parse_number(cells[0], lineno);
            double variance = parse_number(cells[1], lineno);
            if (!(depth >= 10.0 && depth <= 100.0))
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": table depth " << cells[0]
                    << " mm outside [10, 100] mm";
                fail(errc::value_out_of_range, msg.str());
            }
            if (!(variance >= 0.0))
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": variance must be >= 0 dB^2";
                fail(errc::value_out_of_range, msg.str());
            }
            if (!current_table->bins.empty() && depth <= current_table->bins.back().depth_mm)
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": table depths must be strictly increasing";
                fail(errc::parse, msg.str());
            }
            current_table->bins.push_back({depth, variance});
            continue;
        }

        if (current_model != nullptr)
        {
            auto eq = line.find('=');
            if (eq == std::string::npos)
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": expected 'key = value'";
                fail(errc::parse, msg.str());
            }
            std::string key = lower(trim(line.substr(0, eq)));
            std::string value = trim(line.substr(eq + 1));
            if (key != "pl0_db" && key != "m_db" && key != "sigma_db" && key != "variance_table")
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": unknown key '" << key << "'";
                fail(errc::parse, msg.str());
            }
            if (current_model->values.count(key) != 0)
            {
                std::ostringstream msg;
                msg << "line " << lineno << ": key '" << key << "' given twice in one section";
                fail(errc::duplicate_key, msg.str());
            }
            current_model->values[key] = {value, lineno};
            continue;
        }

        std::ostringstream msg;
        msg << "line " << lineno << ": content before the first section header";
        fail(errc::parse, msg.str());
    }

    param_registry registry;
    for (auto &section : sections)
    {
        auto take = [&](const char *key) -> std::optional<std::pair<std::string, std::size_t>> {
            auto it = section.values.find(key);
            if (it == section.values.end())
                return std::nullopt;
            return it->second;
        };
        auto need = [&](const char *key) -> std::pair<std::string, std::size_t> {
            auto v = take(key);
            if (!v)
            {
                std::ostringstream msg;
                msg << "section at line " << section.lineno << " is missing required field '"
                    << key << "'";
                fail(errc::missing_required_field, msg.str());
            }
            return *v;
        };

        param_entry entry;
        entry.key = section.key;
        auto [pl0_text, pl0_line] = need("pl0_db");
        auto [m_text, m_line] = need("m_db");
        entry.params.pl0_db = parse_number(pl0_text, pl0_line);
        entry.params.m_db = parse_number(m_text, m_line);
        if (!(entry.params.m_db > 0.0))
        {
            std::ostringstream msg;
            msg << "line " << m_line << ": decay rate m_db must be > 0";
            fail(errc::value_out_of_range, msg.str());
        }
        entry.params.band = section.band;
        entry.params.context.region = section.region;
        entry.params.context.direction = section.direction;

        auto sigma = take("sigma_db");
        auto table = take("variance_table");
        if (sigma && table)
        {
            std::ostringstream msg;
            msg << "section at line " << section.lineno
                << ": sigma_db and variance_table are mutually exclusive";
            fail(errc::parse, msg.str());
        }
        if (!sigma && !table)
        {
            std::ostringstream msg;
            msg << "section at line " << section.lineno
                << " is missing required field 'sigma_db' or 'variance_table'";
            fail(errc::missing_required_field, msg.str());
        }
        if (sigma)
        {
            double s = parse_number(sigma->first, sigma->second);
            if (!(s >= 0.0))
            {
                std::ostringstream msg;
                msg << "line " << sigma->second << ": sigma_db must be >= 0";
                fail(errc::value_out_of_range, msg.str());
            }
            entry.profile = shadowing_profile::constant_sigma(s);
        }
        else
        {
            auto it = tables.find(lower(table->first));
            if (it == tables.end())
            {
                std::ostringstream msg;
                msg << "line " << table->second << ": variance table '" << table->first
                    << "' is not defined";
                fail(errc::missing_required_field, msg.str());
            }
            if (it->second.bins.empty())
            {
                std::ostringstream msg;
                msg << "line " << table->second << ": variance table '" << table->first
                    << "' has no rows";
                fail(errc::empty_profile, msg.str());
            }
            entry.profile = it->second;
        }

        registry.index_[entry.key] = registry.entries_.size();
        registry.entries_.push_back(std::move(entry));
    }
    if (registry.entries_.empty())
        fail(errc::empty_file, "parameter file defines no model sections");
    return registry;
}

param_registry param_registry::load_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(errc::io, "cannot open parameter file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse(buf.str());
    }
    catch (const error &e)
    {
        fail(e.code(), path + ": " + e.what());
    }
}

const param_entry &param_registry::by_region(const frequency_band &band, body_region region) const
{
    std::string key = std::string(band_name(band.label)) + "/region/" + region_name(region);
    auto it = index_.find(key);
    if (it == index_.end())
        fail(errc::unknown_context, "no parameters for " + key);
    return entries_[it->second];
}

const param_entry &param_registry::by_direction(const frequency_band &band,
                                                const std::string &direction) const
{
    std::string key = std::string(band_name(band.label)) + "/direction/" + lower(direction);
    auto it = index_.find(key);
    if (it == index_.end())
        fail(errc::unknown_context, "no parameters for " + key);
    return entries_[it->second];
}

const param_entry &param_registry::lookup(const frequency_band &band,
                                          const std::string &context) const
{
    try
    {
        return by_region(band, region_from_string(context));
    }
    catch (const error &)
    {
        // not a region name, or no region entry; try the direction key
    }
    std::string key = std::string(band_name(band.label)) + "/direction/" + lower(context);
    auto it = index_.find(key);
    if (it == index_.end())
        fail(errc::unknown_context,
             "no parameters for context '" + context + "' in band " + band_name(band.label));
    return entries_[it->second];
}

} // namespace ivchan
