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

#ifndef ivchan_core_report_H
#define ivchan_core_report_H

#include <string>

#include <json.hpp>

#include "errors.hpp"

namespace ivchan
{

enum class report_format
{
    json,
    csv,
};

report_format report_format_from_string(const std::string &text);

// A structured run report: tool identity, the run configuration it was
// produced from (inputs, flags, seed), and a list of records. Field order
// is insertion order and rendering has no clock or locale dependence, so
// identical runs serialize byte-identically.
class report
{
  public:
    report(const std::string &tool, const std::string &version, const std::string &subcommand);

    // Run-configuration object; callers add their inputs/flags/seed here.
    nlohmann::ordered_json &run() { return doc_["run"]; }

    nlohmann::ordered_json &add_record();

    // Warnings are part of the document, not stderr, so reports stay
    // self-contained.
    void add_warning(const std::string &text);

    std::string render(report_format format) const;

  private:
    nlohmann::ordered_json doc_;
};

} // namespace ivchan

#endif
