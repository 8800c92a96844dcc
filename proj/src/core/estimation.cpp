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

#include "estimation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace ivchan
{

data_source source_from_string(const std::string &text)
{
    std::string t;
    for (char c : text)
        t += char(std::tolower((unsigned char)c));
    if (t == "sim" || t == "simulation")
        return data_source::simulation;
    if (t == "exp" || t == "experiment")
        return data_source::experiment;
    fail(errc::value_out_of_range, "unknown data source '" + text + "' (use simulation or experiment)");
}

const char *source_name(data_source source)
{
    return source == data_source::simulation ? "simulation" : "experiment";
}

grouping_fn grouping_by_name(const std::string &name)
{
    if (name == "band")
        return [](const measurement_record &r) { return std::string(band_name(r.band.label)); };
    if (name == "region")
        return [](const measurement_record &r) { return std::string(region_name(r.context.region)); };
    if (name == "direction")
        return [](const measurement_record &r) { return r.context.direction; };
    if (name == "source")
        return [](const measurement_record &r) { return std::string(source_name(r.source)); };
    if (name == "band_region")
        return [](const measurement_record &r) {
            return std::string(band_name(r.band.label)) + "/" + region_name(r.context.region);
        };
    if (name == "band_direction")
        return [](const measurement_record &r) {
            if (r.context.direction.empty())
                return std::string();
            return std::string(band_name(r.band.label)) + "/" + r.context.direction;
        };
    if (name == "band_source")
        return [](const measurement_record &r) {
            return std::string(band_name(r.band.label)) + "/" + source_name(r.source);
        };
    if (name == "all")
        return [](const measurement_record &) { return std::string("all"); };
    fail(errc::invalid_argument, "unknown grouping '" + name + "'");
}

// Depth bins follow the 10 mm simulation grid; anything off grid joins the
// nearest bin inside the validity range.
static int depth_bin_mm(double depth_mm)
{
    int bin = int(std::lround(depth_mm / 10.0)) * 10;
    return std::clamp(bin, 10, 100);
}

shadowing_profile shadowing_variance_by_depth(const std::vector<measurement_record> &records,
                                              const fit_result &fit,
                                              std::vector<std::string> *warnings)
{
    std::map<int, std::vector<double>> residuals_by_bin;
    for (const auto &r : records)
    {
        double fitted = fit.pl0_db + fit.m_db * (r.depth_mm / fit.d0_mm);
        residuals_by_bin[depth_bin_mm(r.depth_mm)].push_back(r.pl_db - fitted);
    }
    shadowing_profile profile;
    for (const auto &[bin, residuals] : residuals_by_bin)
    {
        if (residuals.size() < 2)
        {
            if (warnings != nullptr)
            {
                std::ostringstream msg;
                msg << "depth bin " << bin << " mm omitted: " << residuals.size()
                    << " record(s), need 2 for a variance";
                warnings->push_back(msg.str());
            }
            continue;
        }
        double mean = 0.0;
        for (double r : residuals)
            mean += r;
        mean /= double(residuals.size());
        double ss = 0.0;
        for (double r : residuals)
            ss += (r - mean) * (r - mean);
        profile.bins.push_back({double(bin), ss / double(residuals.size() - 1)});
    }
    return profile;
}

std::vector<fit_result> fit_path_loss(const measurement_dataset &dataset,
                                      const grouping_fn &grouping, double d0_mm)
{
    if (!(d0_mm > 0.0))
        fail(errc::invalid_argument, "reference depth must be > 0 mm");
    std::map<std::string, std::vector<measurement_record>> groups;
    for (const auto &r : dataset.records)
    {
        std::string key = grouping(r);
        if (!key.empty())
            groups[key].push_back(r);
    }
    if (groups.empty())
        fail(errc::insufficient_data, "no records matched the grouping");

    std::vector<fit_result> results;
    for (const auto &[key, records] : groups)
    {
        std::size_t n = records.size();
        if (n < 2)
            fail(errc::insufficient_data, "group '" + key + "' has fewer than 2 records");

        double xbar = 0.0, ybar = 0.0;
        for (const auto &r : records)
        {
            xbar += r.depth_mm / d0_mm;
            ybar += r.pl_db;
        }
        xbar /= double(n);
        ybar /= double(n);

        double sxx = 0.0, sxy = 0.0;
        for (const auto &r : records)
        {
            double dx = r.depth_mm / d0_mm - xbar;
            sxx += dx * dx;
            sxy += dx * (r.pl_db - ybar);
        }
        if (sxx == 0.0)
            fail(errc::degenerate_depths, "group '" + key + "' has all records at one depth");

        fit_result fit;
        fit.group_key = key;
        fit.d0_mm = d0_mm;
        fit.m_db = sxy / sxx;
        fit.pl0_db = ybar - fit.m_db * xbar;
        fit.n_samples = n;

        double ss_res = 0.0, ss_tot = 0.0;
        for (const auto &r : records)
        {
            double fitted = fit.pl0_db + fit.m_db * (r.depth_mm / d0_mm);
            ss_res += (r.pl_db - fitted) * (r.pl_db - fitted);
            ss_tot += (r.pl_db - ybar) * (r.pl_db - ybar);
        }
        fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
        fit.residual_profile = shadowing_variance_by_depth(records, fit, &fit.warnings);
        results.push_back(std::move(fit));
    }
    return results;
}

comparison_report compare_models(const fit_result &fit_a, const fit_result &fit_b)
{
    if (fit_b.m_db == 0.0)
        fail(errc::zero_slope_denominator, "reference fit has zero decay rate");
    comparison_report report;
    report.key_a = fit_a.group_key;
    report.key_b = fit_b.group_key;
    report.decay_rate_ratio = fit_a.m_db / fit_b.m_db;
    report.delta_pl0_db = fit_a.pl0_db - fit_b.pl0_db;
    for (int depth = 10; depth <= 100; depth += 10)
    {
        double mean_a = fit_a.pl0_db + fit_a.m_db * (double(depth) / fit_a.d0_mm);
        double mean_b = fit_b.pl0_db + fit_b.m_db * (double(depth) / fit_b.d0_mm);
        report.per_depth.push_back({double(depth), mean_a - mean_b});
    }
    return report;
}

std::vector<group_means> empirical_mean_pl_by_depth(const measurement_dataset &dataset,
                                                    const grouping_fn &grouping)
{
    std::map<std::string, std::map<double, std::pair<double, std::size_t>>> acc;
    for (const auto &r : dataset.records)
    {
        std::string key = grouping(r);
        if (key.empty())
            continue;
        auto &cell = acc[key][r.depth_mm];
        cell.first += r.pl_db;
        cell.second += 1;
    }
    std::vector<group_means> out;
    for (const auto &[key, depths] : acc)
    {
        group_means g;
        g.group_key = key;
        for (const auto &[depth, cell] : depths)
            g.rows.push_back({depth, cell.first / double(cell.second), cell.second});
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace ivchan
