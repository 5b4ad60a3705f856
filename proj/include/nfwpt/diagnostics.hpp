// SPDX-License-Identifier: Apache-2.0
//
// nfwpt - sensing-assisted near-field wireless power transfer simulator
// Copyright (C) 2026 The nfwpt authors
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

#ifndef NFWPT_DIAGNOSTICS_HPP
#define NFWPT_DIAGNOSTICS_HPP

#include <functional>
#include <string_view>

namespace nfwpt
{
    using WarningHandler = std::function<void(std::string_view)>;

    // Replaces the process-wide warning sink (default: one line on stderr).
    // Returns the previous handler. Passing an empty function silences warnings.
    WarningHandler set_warning_handler(WarningHandler handler);

    void warn(std::string_view message);
}

#endif
