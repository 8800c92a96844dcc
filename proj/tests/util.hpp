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

#ifndef ivchan_tests_util_H
#define ivchan_tests_util_H

#include <string>

#include "../src/core/errors.hpp"

namespace testutil
{

// Error code raised by a callable, or errc::ok if it returns normally.
template <typename Fn> ivchan::errc code_of(Fn &&fn)
{
    try
    {
        fn();
    }
    catch (const ivchan::error &e)
    {
        return e.code();
    }
    return ivchan::errc::ok;
}

// Error message raised by a callable, empty if it returns normally.
template <typename Fn> std::string message_of(Fn &&fn)
{
    try
    {
        fn();
    }
    catch (const ivchan::error &e)
    {
        return e.what();
    }
    return {};
}

} // namespace testutil

#endif
