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

#ifndef ivchan_core_param_registry_H
#define ivchan_core_param_registry_H

#include <map>
#include <string>
#include <vector>

#include "path_loss.hpp"

namespace ivchan
{

struct param_entry
{
    std::string key; // "915MHz/region/heart", "2.4GHz/direction/anterior"
    path_loss_params params;
    shadowing_profile profile;
};

// Model parameter sets keyed by (band, region) or (band, direction), loaded
// from a plain-text file of the form
//
//   ! comment
//   [band 915MHz region heart]
//   pl0_db = 28.4
//   m_db = 4.6
//   sigma_db = 5.1
//
//   [band 915MHz region torso]
//   pl0_db = 28.5
//   m_db = 4.8
//   variance_table = torso_915
//
//   [table torso_915]
//   10 1.6
//   20 3.2
//
// Each model section needs pl0_db, m_db and exactly one of sigma_db or
// variance_table; tables hold "depth_mm variance_db2" rows with strictly
// increasing depths in [10, 100]. Tables may be defined before or after
// the sections that reference them.
class param_registry
{
  public:
    static param_registry parse(const std::string &text);
    static param_registry load_file(const std::string &path);

    const param_entry &by_region(const frequency_band &band, body_region region) const;
    const param_entry &by_direction(const frequency_band &band, const std::string &direction) const;

    // Resolves a context label that may name either a region or a direction.
    const param_entry &lookup(const frequency_band &band, const std::string &context) const;

    std::size_t size() const { return entries_.size(); }
    const std::vector<param_entry> &entries() const { return entries_; }

  private:
    std::vector<param_entry> entries_;    // file order
    std::map<std::string, std::size_t> index_;
};

} // namespace ivchan

#endif
