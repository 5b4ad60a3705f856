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

#ifndef NFWPT_CHANNEL_MODEL_HPP
#define NFWPT_CHANNEL_MODEL_HPP

#include "nfwpt/array_geometry.hpp"

#include <Eigen/Dense>
#include <complex>

namespace nfwpt
{
    using cdouble = std::complex<double>;
    using ChannelVector = Eigen::VectorXcd;

    // Contiguous block of visible elements, 1-based and inclusive on both ends.
    struct VisibilityRegion
    {
        int start = 1;
        int end = 1;

        int count() const { return end - start + 1; }
        bool contains(int n) const { return n >= start && n <= end; }
        bool operator==(const VisibilityRegion &) const = default;
    };

    // ceil(eta * N) with a guard against eta * N landing a hair above an integer
    int min_vr_span(double eta, int n_elements);

    // Throws InvalidArgument unless 1 <= start <= end <= N. Channel synthesis
    // accepts any such mask, including a single element.
    void check_vr(const VisibilityRegion &vr, int n_elements);

    // The VR invariant proper: start < end and end - start >= ceil(eta * N).
    void check_vr(const VisibilityRegion &vr, int n_elements, double eta);

    // One energy receiver as seen by the AP
    struct ErState
    {
        Eigen::Vector3d position = Eigen::Vector3d::Zero(); // metres
        VisibilityRegion vr;
        cdouble reflection{1.0, 0.0}; // b
        double weight = 1.0;          // beta >= 0
    };

    enum class Axis
    {
        x = 0,
        y = 1,
        z = 2
    };

    // Spherical-wavefront steering vector:
    //   a_n(l) = lambda / (4 pi d_n) * exp(-j 2 pi d_n / lambda),  d_n = |l_n - l|.
    // Throws SingularGeometry if l sits on an element.
    ChannelVector steering_vector(const ArrayGeometry &geom, const Eigen::Vector3d &l);

    // 0/1 mask selecting the elements of vr
    Eigen::VectorXd vr_cover(const VisibilityRegion &vr, int n_elements);

    // h = a(l) .* g(vr); entries outside the VR are exactly zero.
    ChannelVector channel(const ArrayGeometry &geom, const Eigen::Vector3d &l, const VisibilityRegion &vr);
    ChannelVector channel(const ArrayGeometry &geom, const ErState &er);

    // d a(l) / d u masked by vr, u in {x, y, z}:
    //   a_n(l) * [ (u_n - u) / d_n^2 + j (2 pi / lambda) (u_n - u) / d_n ]
    // where a_n(l) is the full complex steering entry.
    ChannelVector channel_derivative(const ArrayGeometry &geom, const Eigen::Vector3d &l,
                                     const VisibilityRegion &vr, Axis axis);
}

#endif
