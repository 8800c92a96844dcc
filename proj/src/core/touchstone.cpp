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

#include "touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ivchan
{

static std::string fmt_double(double value)
{
    // Shortest representation that parses back to the same double; also
    // locale-independent, unlike printf.
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

static bool parse_double(const std::string &token, double &out)
{
    const char *begin = token.c_str();
    const char *end = begin + token.size();
    if (begin != end && *begin == '+')
        begin++; // VNA exports write explicit plus signs; from_chars does not take them
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

static std::vector<std::string> split_ws(const std::string &line)
{
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

static std::string upper(const std::string &text)
{
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return char(std::toupper(c)); });
    return out;
}

[[noreturn]] static void fail_at(errc code, std::size_t lineno, const std::string &what)
{
    std::ostringstream msg;
    msg << "line " << lineno << ": " << what;
    fail(code, msg.str());
}

static void parse_option_line(const std::string &line, std::size_t lineno, touchstone_sweep &sweep)
{
    std::vector<std::string> tokens = split_ws(line.substr(1));
    for (std::size_t i = 0; i < tokens.size(); i++)
    {
        std::string tok = upper(tokens[i]);
        if (tok == "HZ")
            sweep.freq_unit_hz = 1.0;
        else if (tok == "KHZ")
            sweep.freq_unit_hz = 1e3;
        else if (tok == "MHZ")
            sweep.freq_unit_hz = 1e6;
        else if (tok == "GHZ")
            sweep.freq_unit_hz = 1e9;
        else if (tok == "S")
            ; // parameter type, the only one supported
        else if (tok == "Y" || tok == "Z" || tok == "H" || tok == "G")
            fail_at(errc::malformed_option_line, lineno,
                    "parameter type '" + tokens[i] + "' not supported, only S");
        else if (tok == "RI")
            sweep.format = touchstone_format::ri;
        else if (tok == "MA")
            sweep.format = touchstone_format::ma;
        else if (tok == "DB")
            sweep.format = touchstone_format::db;
        else if (tok == "R")
        {
            if (i + 1 >= tokens.size() || !parse_double(tokens[i + 1], sweep.reference_ohms) ||
                !(sweep.reference_ohms > 0.0))
                fail_at(errc::malformed_option_line, lineno,
                        "R must be followed by a positive resistance");
            i++;
        }
        else
            fail_at(errc::malformed_option_line, lineno,
                    "unrecognized option token '" + tokens[i] + "'");
    }
}

touchstone_sweep parse_touchstone(const std::string &text)
{
    touchstone_sweep sweep; // defaults: # GHZ S MA R 50
    bool saw_option = false;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        lineno++;
        if (auto bang = line.find('!'); bang != std::string::npos)
            line.erase(bang);
        while (!line.empty() && std::isspace((unsigned char)line.back()))
            line.pop_back();
        std::size_t first = 0;
        while (first < line.size() && std::isspace((unsigned char)line[first]))
            first++;
        line.erase(0, first);
        if (line.empty())
            continue;

        if (line[0] == '[')
            fail_at(errc::unsupported_version, lineno,
                    "keyword line '" + line + "' is Touchstone v2, only v1 is supported");

        if (line[0] == '#')
        {
            if (saw_option)
                fail_at(errc::malformed_option_line, lineno, "more than one option line");
            if (!sweep.freq_hz.empty())
                fail_at(errc::malformed_option_line, lineno, "option line after data rows");
            parse_option_line(line, lineno, sweep);
            saw_option = true;
            continue;
        }

        std::vector<std::string> tokens = split_ws(line);
        if (tokens.size() != 9)
        {
            std::ostringstream what;
            what << "expected 9 values for a two-port row (freq + 4 pairs), got "
                 << tokens.size();
            fail_at(errc::row_arity, lineno, what.str());
        }
        double values[9];
        for (std::size_t i = 0; i < 9; i++)
            if (!parse_double(tokens[i], values[i]))
                fail_at(errc::parse, lineno, "'" + tokens[i] + "' is not a number");

        double freq = values[0] * sweep.freq_unit_hz;
        if (!sweep.freq_hz.empty() && !(freq > sweep.freq_hz.back()))
            fail_at(errc::non_monotonic_frequency, lineno,
                    "frequency must be strictly increasing");
        sweep.freq_hz.push_back(freq);

        std::array<std::complex<double>, 4> row;
        for (std::size_t p = 0; p < 4; p++)
        {
            double a = values[1 + 2 * p];
            double b = values[2 + 2 * p];
            switch (sweep.format)
            {
            case touchstone_format::ri:
                row[p] = {a, b};
                break;
            case touchstone_format::ma:
                row[p] = std::polar(a, b * std::numbers::pi / 180.0);
                break;
            case touchstone_format::db:
                row[p] = std::polar(std::pow(10.0, a / 20.0), b * std::numbers::pi / 180.0);
                break;
            }
        }
        sweep.sparams.push_back(row);
    }
    if (sweep.freq_hz.empty())
        fail(errc::empty_file, "no data rows in Touchstone input");
    return sweep;
}

frequency_response touchstone_sweep::s21() const
{
    if (freq_hz.size() < 2)
        fail(errc::empty_response, "sweep has fewer than 2 frequency points");
    double step0 = freq_hz[1] - freq_hz[0];
    for (std::size_t i = 1; i + 1 < freq_hz.size(); i++)
    {
        double step = freq_hz[i + 1] - freq_hz[i];
        if (std::abs(step - step0) > 1e-6 * step0)
        {
            std::ostringstream msg;
            msg << "frequency grid not uniform at point " << i + 1 << " (step " << step
                << " Hz vs " << step0 << " Hz)";
            fail(errc::non_uniform_grid, msg.str());
        }
    }
    frequency_response fr;
    fr.f_start_hz = freq_hz.front();
    fr.f_step_hz = (freq_hz.back() - freq_hz.front()) / double(freq_hz.size() - 1);
    fr.samples.reserve(sparams.size());
    for (const auto &row : sparams)
        fr.samples.push_back(row[1]);
    return fr;
}

std::string write_touchstone(const touchstone_sweep &sweep, touchstone_format format)
{
    std::ostringstream out;
    out << "! two-port S-parameter sweep\n";
    out << "# HZ S "
        << (format == touchstone_format::ri ? "RI" : format == touchstone_format::ma ? "MA" : "DB")
        << " R " << fmt_double(sweep.reference_ohms) << "\n";
    for (std::size_t i = 0; i < sweep.freq_hz.size(); i++)
    {
        out << fmt_double(sweep.freq_hz[i]);
        for (const auto &s : sweep.sparams[i])
        {
            double a = 0.0, b = 0.0;
            switch (format)
            {
            case touchstone_format::ri:
                a = s.real();
                b = s.imag();
                break;
            case touchstone_format::ma:
                a = std::abs(s);
                b = std::arg(s) * 180.0 / std::numbers::pi;
                break;
            case touchstone_format::db:
            {
                double mag = std::abs(s);
                // A true zero has no dB value; this sentinel underflows back
                // to zero magnitude when reparsed.
                a = mag == 0.0 ? -1e30 : 20.0 * std::log10(mag);
                b = std::arg(s) * 180.0 / std::numbers::pi;
                break;
            }
            }
            out << " " << fmt_double(a) << " " << fmt_double(b);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace ivchan
