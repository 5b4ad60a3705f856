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

#include "nfwpt/channel_model.hpp"
#include "nfwpt/errors.hpp"
#include "steering_kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nfwpt
{
    using detail::element_distance;
    using detail::steering_entry;

    int min_vr_span(double eta, int n_elements)
    {
        const double x = eta * double(n_elements);
        const double r = std::round(x);
        if (std::abs(x - r) <= 1e-9 * std::max(1.0, x))
            return int(r);
        return int(std::ceil(x));
    }

    void check_vr(const VisibilityRegion &vr, int n_elements)
    {
        if (vr.start < 1 || vr.end > n_elements || vr.start > vr.end)
            throw InvalidArgument("visibility region (" + std::to_string(vr.start) + ", " +
                                  std::to_string(vr.end) + ") invalid for N = " + std::to_string(n_elements));
    }

    void check_vr(const VisibilityRegion &vr, int n_elements, double eta)
    {
        check_vr(vr, n_elements);
        if (vr.start == vr.end || vr.end - vr.start < min_vr_span(eta, n_elements))
            throw InvalidArgument("visibility region smaller than the minimum span ceil(eta*N)");
    }

    ChannelVector steering_vector(const ArrayGeometry &geom, const Eigen::Vector3d &l)
    {
        const int n = geom.size();
        ChannelVector a(n);
        for (int i = 0; i < n; ++i)
            a[i] = steering_entry(element_distance(geom, i, l), geom.wavelength);
        return a;
    }

    Eigen::VectorXd vr_cover(const VisibilityRegion &vr, int n_elements)
    {
        check_vr(vr, n_elements);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(n_elements);
        g.segment(vr.start - 1, vr.count()).setOnes();
        return g;
    }

    ChannelVector channel(const ArrayGeometry &geom, const Eigen::Vector3d &l, const VisibilityRegion &vr)
    {
        const ChannelVector a = steering_vector(geom, l);
        return a.cwiseProduct(vr_cover(vr, geom.size()).cast<cdouble>());
    }

    ChannelVector channel(const ArrayGeometry &geom, const ErState &er)
    {
        return channel(geom, er.position, er.vr);
    }

    ChannelVector channel_derivative(const ArrayGeometry &geom, const Eigen::Vector3d &l,
                                     const VisibilityRegion &vr, Axis axis)
    {
        const int n = geom.size();
        check_vr(vr, n);
        const int u = int(axis);
        const double k = 2.0 * std::numbers::pi / geom.wavelength;

        ChannelVector out = ChannelVector::Zero(n);
        for (int i = 0; i < n; ++i)
        {
            const double d = element_distance(geom, i, l);
            if (!vr.contains(i + 1))
                continue;
            const double du = geom.positions(u, i) - l[u];
            out[i] = steering_entry(d, geom.wavelength) * cdouble(du / (d * d), k * du / d);
        }
        return out;
    }
}
