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

#include "nfwpt/array_geometry.hpp"
#include "nfwpt/errors.hpp"

#include <string>

namespace nfwpt
{
    ArrayGeometry build_upa(int n_y, int n_z, double carrier_freq, std::optional<double> spacing)
    {
        if (n_y < 1 || n_z < 1)
            throw InvalidArgument("build_upa: array dimensions must be >= 1");
        if (!(carrier_freq > 0.0))
            throw InvalidArgument("build_upa: carrier frequency must be positive");
        if (spacing && !(*spacing > 0.0))
            throw InvalidArgument("build_upa: element spacing must be positive");

        ArrayGeometry g;
        g.n_y = n_y;
        g.n_z = n_z;
        g.carrier_freq = carrier_freq;
        g.wavelength = speed_of_light / carrier_freq;
        g.spacing = spacing.value_or(g.wavelength / 2.0);

        const double y0 = 0.5 * double(n_y - 1);
        const double z0 = 0.5 * double(n_z - 1);
        g.positions.resize(3, n_y * n_z);
        for (int iz = 0; iz < n_z; ++iz)
            for (int iy = 0; iy < n_y; ++iy)
            {
                const int col = iz * n_y + iy;
                g.positions(0, col) = 0.0;
                g.positions(1, col) = (double(iy) - y0) * g.spacing;
                g.positions(2, col) = (double(iz) - z0) * g.spacing;
            }
        return g;
    }

    Eigen::Vector3d ArrayGeometry::element_position(int n) const
    {
        if (n < 1 || n > size())
            throw InvalidArgument("element_position: index " + std::to_string(n) + " outside 1.." +
                                  std::to_string(size()));
        return positions.col(n - 1);
    }

    int ArrayGeometry::linear_index(int i_y, int i_z) const
    {
        if (i_y < 1 || i_y > n_y || i_z < 1 || i_z > n_z)
            throw InvalidArgument("linear_index: grid index out of range");
        return (i_z - 1) * n_y + i_y;
    }

    std::pair<int, int> ArrayGeometry::grid_index(int n) const
    {
        if (n < 1 || n > size())
            throw InvalidArgument("grid_index: index out of range");
        return {(n - 1) % n_y + 1, (n - 1) / n_y + 1};
    }
}
