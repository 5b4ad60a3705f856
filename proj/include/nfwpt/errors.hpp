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

#ifndef NFWPT_ERRORS_HPP
#define NFWPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nfwpt
{
    // Bad arguments: out-of-range indices, non-positive sizes, mismatched dimensions.
    class InvalidArgument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A point coincides with an array element, so the spherical channel is undefined.
    class SingularGeometry : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // No window satisfies the minimum VR size constraint.
    class Infeasible : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Effective channel has zero norm (empty or underflowed mask).
    class DegenerateChannel : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Zero channel in the echo model, so the Fisher information is undefined.
    class SingularModel : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Fisher information not invertible (condition number too large).
    class SingularFim : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // h^T x vanishes, the reflection coefficient cannot be resolved.
    class UnidentifiableB : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // K * tau >= T leaves no symbols for energy transmission.
    class InfeasibleBlock : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
