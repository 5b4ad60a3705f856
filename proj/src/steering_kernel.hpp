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

// Internal per-element kernels shared by the channel and localization code.

#ifndef NFWPT_STEERING_KERNEL_HPP
#define NFWPT_STEERING_KERNEL_HPP

#include "nfwpt/array_geometry.hpp"
#include "nfwpt/channel_model.hpp"
#include "nfwpt/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nfwpt::detail
{
    inline double element_distance(const ArrayGeometry &geom, int col, const Eigen::Vector3d &l)
    {
        const double d = (geom.positions.col(col) - l).norm();
        if (!(d > 1e-12 * geom.wavelength))
            throw SingularGeometry("point coincides with array element " + std::to_string(col + 1));
        return d;
    }

    inline cdouble steering_entry(double d, double wavelength)
    {
        const double k = 2.0 * std::numbers::pi / wavelength;
        return std::polar(wavelength / (4.0 * std::numbers::pi * d), -k * d);
    }

    // a(l) restricted to the elements of vr (length vr.count())
    inline Eigen::VectorXcd steering_segment(const ArrayGeometry &geom, const Eigen::Vector3d &l,
                                             const VisibilityRegion &vr)
    {
        Eigen::VectorXcd a(vr.count());
        for (int i = 0; i < vr.count(); ++i)
            a[i] = steering_entry(element_distance(geom, vr.start - 1 + i, l), geom.wavelength);
        return a;
    }
}

#endif
