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

#ifndef NFWPT_ARRAY_GEOMETRY_HPP
#define NFWPT_ARRAY_GEOMETRY_HPP

#include <Eigen/Dense>
#include <optional>
#include <utility>

namespace nfwpt
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    // Uniform planar array in the yoz plane, centred on the origin.
    //
    // Elements are addressed by a 1-based linear index n in 1..N with the
    // y-major mapping n = (i_z - 1) * n_y + i_y, so consecutive indices walk
    // along y first and a contiguous index window is a horizontal band.
    struct ArrayGeometry
    {
        int n_y = 0;
        int n_z = 0;
        double carrier_freq = 0.0; // Hz
        double wavelength = 0.0;   // m
        double spacing = 0.0;      // m, element pitch along both axes
        Eigen::Matrix3Xd positions; // column n-1 holds element n, metres

        int size() const { return n_y * n_z; }

        // 1-based element position; throws InvalidArgument if n is out of range
        Eigen::Vector3d element_position(int n) const;

        // (i_y, i_z) -> n and back, all 1-based
        int linear_index(int i_y, int i_z) const;
        std::pair<int, int> grid_index(int n) const;
    };

    // Spacing defaults to half a wavelength.
    ArrayGeometry build_upa(int n_y, int n_z, double carrier_freq,
                            std::optional<double> spacing = std::nullopt);
}

#endif
