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

#include "report.hpp"

#include <sstream>
#include <vector>

namespace ivchan
{

report_format report_format_from_string(const std::string &text)
{
    if (text == "json")
        return report_format::json;
    if (text == "csv")
        return report_format::csv;
    fail(errc::invalid_argument, "unknown report format '" + text + "' (use json or csv)");
}

report::report(const std::string &tool, const std::string &version, const std::string &subcommand)
{
    doc_["tool"] = tool;
    doc_["version"] = version;
    doc_["subcommand"] = subcommand;
    doc_["run"] = nlohmann::ordered_json::object();
    doc_["warnings"] = nlohmann::ordered_json::array();
    doc_["records"] = nlohmann::ordered_json::array();
}

nlohmann::ordered_json &report::add_record()
{
    doc_["records"].push_back(nlohmann::ordered_json::object());
    return doc_["records"].back();
}

void report::add_warning(const std::string &text)
{
    doc_["warnings"].push_back(text);
}

static std::string csv_escape(const std::string &cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos)
        return cell;
    std::string out = "\"";
    for (char c : cell)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

static std::string csv_cell(const nlohmann::ordered_json &value)
{
    if (value.is_null())
        return "";
    if (value.is_string())
        return csv_escape(value.get<std::string>());
    return value.dump();
}

std::string report::render(report_format format) const
{
    if (format == report_format::json)
        return doc_.dump(2) + "\n";

    // CSV: the run configuration rides along as one leading comment line so
    // the report stays reproducible, then a header over the union of record
    // keys in first-seen order.
    std::ostringstream out;
    nlohmann::ordered_json head;
    head["tool"] = doc_["tool"];
    head["version"] = doc_["version"];
    head["subcommand"] = doc_["subcommand"];
    head["run"] = doc_["run"];
    if (!doc_["warnings"].empty())
        head["warnings"] = doc_["warnings"];
    out << "# " << head.dump() << "\n";

    std::vector<std::string> columns;
    for (const auto &record : doc_["records"])
        for (auto it = record.begin(); it != record.end(); ++it)
            if (std::find(columns.begin(), columns.end(), it.key()) == columns.end())
                columns.push_back(it.key());

    for (std::size_t i = 0; i < columns.size(); i++)
        out << (i ? "," : "") << csv_escape(columns[i]);
    out << "\n";
    for (const auto &record : doc_["records"])
    {
        for (std::size_t i = 0; i < columns.size(); i++)
        {
            if (i)
                out << ",";
            if (record.contains(columns[i]))
                out << csv_cell(record[columns[i]]);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace ivchan
