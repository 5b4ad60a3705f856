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

#ifndef NFWPT_LOCALIZATION_HPP
#define NFWPT_LOCALIZATION_HPP

#include "nfwpt/array_geometry.hpp"
#include "nfwpt/channel_model.hpp"
#include "nfwpt/execution.hpp"

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace nfwpt
{
    struct SearchBox
    {
        Eigen::Vector3d lo = Eigen::Vector3d::Zero();
        Eigen::Vector3d hi = Eigen::Vector3d::Zero();

        bool contains(const Eigen::Vector3d &p) const
        {
            return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
        }

        // centre +- half_width per axis
        static SearchBox around(const Eigen::Vector3d &centre, const Eigen::Vector3d &half_width)
        {
            return {centre - half_width, centre + half_width};
        }
    };

    struct LocalizationOptions
    {
        std::array<int, 3> coarse_grid{9, 9, 9}; // lattice points per axis, >= 2
        double tol = 1e-4;                       // m, position change per cycle
        int max_iters = 50;                      // refinement cycles
        int line_search_iters = 30;              // golden-section steps per coordinate
        Execution execution = Execution::parallel;
    };

    struct LocalizationResult
    {
        Eigen::Vector3d position = Eigen::Vector3d::Zero();
        cdouble b_hat{0.0, 0.0};
        double objective = 0.0; // concentrated likelihood at position
        int iterations = 0;     // refinement cycles run
        bool converged = false;
        std::vector<double> trace; // objective at the lattice start and after each cycle
    };

    struct GridPoint
    {
        Eigen::Vector3d position = Eigen::Vector3d::Zero();
        double objective = 0.0;
    };

    // |h(l)^H y|^2 / |h(l)|^2 with h(l) = a(l) .* g(vr_hat).
    // With a constant probe the column sum y_bar is sufficient for the echo matrix,
    // so the maximiser over l is the ML position estimate.
    // Throws DegenerateChannel if h(l) has zero norm.
    double concentrated_objective(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar,
                                  const Eigen::Vector3d &candidate, const VisibilityRegion &vr_hat);

    // Best point of a regular lattice over box. Ties go to the lowest lattice index
    // (x fastest, then y, then z), so serial and parallel runs agree exactly.
    GridPoint coarse_grid_search(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar,
                                 const VisibilityRegion &vr_hat, const SearchBox &box,
                                 const std::array<int, 3> &grid, Execution execution = Execution::parallel);

    // Least-squares reflection coefficient given the position:
    //   b = h^H y_bar / (tau (h^T x) |h|^2)
    // Throws UnidentifiableB when h^T x vanishes.
    cdouble estimate_b(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar, const Eigen::Vector3d &l_hat,
                       const VisibilityRegion &vr_hat, const Eigen::VectorXcd &probe, int slot_len);

    // Approximate cyclic ML search: coarse lattice, then cyclic golden-section line
    // searches until the position moves less than tol in a full cycle.
    //
    // The cycle runs over the principal axes of the local curvature metric
    //   G = Re[ dH^H (I - h h^H / |h|^2) dH ] / |h|^2,   dH = [dh/dx, dh/dy, dh/dz]
    // rather than over x, y, z. Each line search is confined to the box and to
    // +- 1 / sqrt(g) around the current point (inside the main lobe). The objective
    // never decreases from one step to the next.
    LocalizationResult locate_3d_aco(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar,
                                     const VisibilityRegion &vr_hat, const SearchBox &box,
                                     const Eigen::VectorXcd &probe, int slot_len,
                                     const LocalizationOptions &options = {});
}

#endif
