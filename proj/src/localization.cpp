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

#include "nfwpt/localization.hpp"
#include "nfwpt/errors.hpp"
#include "steering_kernel.hpp"

#include <Eigen/Eigenvalues>
#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

namespace nfwpt
{
    namespace
    {
        struct Segment
        {
            Eigen::VectorXcd a; // steering entries over the VR
            double norm2 = 0.0;
        };

        Segment masked_channel(const ArrayGeometry &geom, const Eigen::Vector3d &l, const VisibilityRegion &vr)
        {
            Segment s;
            s.a = detail::steering_segment(geom, l, vr);
            s.norm2 = s.a.squaredNorm();
            if (!(s.norm2 > 0.0))
                throw DegenerateChannel("constructed channel has zero norm");
            return s;
        }

        double objective_unchecked(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar,
                                   const Eigen::Vector3d &l, const VisibilityRegion &vr)
        {
            const Segment s = masked_channel(geom, l, vr);
            const cdouble proj = s.a.dot(y_bar.segment(vr.start - 1, vr.count())); // a^H y
            return std::norm(proj) / s.norm2;
        }

        // Local curvature metric of the normalised constructed channel
        Eigen::Matrix3d curvature_metric(const ArrayGeometry &geom, const Eigen::Vector3d &l,
                                         const VisibilityRegion &vr)
        {
            const Segment s = masked_channel(geom, l, vr);
            const double k = 2.0 * std::numbers::pi / geom.wavelength;
            Eigen::MatrixXcd dh(vr.count(), 3);
            for (int i = 0; i < vr.count(); ++i)
            {
                const Eigen::Vector3d diff = geom.positions.col(vr.start - 1 + i) - l;
                const double d = diff.norm();
                for (int u = 0; u < 3; ++u)
                    dh(i, u) = s.a[i] * cdouble(diff[u] / (d * d), k * diff[u] / d);
            }
            const Eigen::RowVector3cd proj = s.a.adjoint() * dh;
            const Eigen::MatrixXcd perp = dh - s.a * proj / s.norm2;
            return (perp.adjoint() * perp).real() / s.norm2;
        }

        // Interval of t such that p + t d stays in the box
        std::pair<double, double> box_interval(const SearchBox &box, const Eigen::Vector3d &p,
                                               const Eigen::Vector3d &d)
        {
            double lo = -std::numeric_limits<double>::infinity();
            double hi = std::numeric_limits<double>::infinity();
            for (int u = 0; u < 3; ++u)
            {
                if (std::abs(d[u]) < 1e-15)
                    continue;
                double a = (box.lo[u] - p[u]) / d[u];
                double b = (box.hi[u] - p[u]) / d[u];
                if (a > b)
                    std::swap(a, b);
                lo = std::max(lo, a);
                hi = std::min(hi, b);
            }
            return {std::min(lo, 0.0), std::max(hi, 0.0)};
        }

        Eigen::Vector3d clamp_to_box(const SearchBox &box, Eigen::Vector3d p)
        {
            return p.cwiseMax(box.lo).cwiseMin(box.hi);
        }
    }

    double concentrated_objective(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar,
                                  const Eigen::Vector3d &candidate, const VisibilityRegion &vr_hat)
    {
        if (y_bar.size() != geom.size())
            throw InvalidArgument("concentrated_objective: echo length does not match the array");
        check_vr(vr_hat, geom.size());
        return objective_unchecked(geom, y_bar, candidate, vr_hat);
    }

    GridPoint coarse_grid_search(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar,
                                 const VisibilityRegion &vr_hat, const SearchBox &box,
                                 const std::array<int, 3> &grid, Execution execution)
    {
        if (y_bar.size() != geom.size())
            throw InvalidArgument("coarse_grid_search: echo length does not match the array");
        check_vr(vr_hat, geom.size());
        if ((box.lo.array() > box.hi.array()).any() || !box.lo.allFinite() || !box.hi.allFinite())
            throw InvalidArgument("coarse_grid_search: empty search box");
        for (int g : grid)
            if (g < 2)
                throw InvalidArgument("coarse_grid_search: need at least 2 lattice points per axis");

        const int total = grid[0] * grid[1] * grid[2];
        auto lattice_point = [&](int idx)
        {
            const int ix = idx % grid[0];
            const int iy = (idx / grid[0]) % grid[1];
            const int iz = idx / (grid[0] * grid[1]);
            const Eigen::Vector3d frac(double(ix) / (grid[0] - 1), double(iy) / (grid[1] - 1),
                                       double(iz) / (grid[2] - 1));
            return Eigen::Vector3d(box.lo + (box.hi - box.lo).cwiseProduct(frac));
        };

        std::vector<double> values(total);
        if (execution == Execution::parallel)
        {
#pragma omp parallel for schedule(static)
            for (int idx = 0; idx < total; ++idx)
                values[idx] = objective_unchecked(geom, y_bar, lattice_point(idx), vr_hat);
        }
        else
        {
            for (int idx = 0; idx < total; ++idx)
                values[idx] = objective_unchecked(geom, y_bar, lattice_point(idx), vr_hat);
        }

        int best = 0;
        for (int idx = 1; idx < total; ++idx)
            if (values[idx] > values[best])
                best = idx;
        return {lattice_point(best), values[best]};
    }

    cdouble estimate_b(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar, const Eigen::Vector3d &l_hat,
                       const VisibilityRegion &vr_hat, const Eigen::VectorXcd &probe, int slot_len)
    {
        if (y_bar.size() != geom.size() || probe.size() != geom.size())
            throw InvalidArgument("estimate_b: echo/probe length does not match the array");
        if (slot_len < 1)
            throw InvalidArgument("estimate_b: slot length must be >= 1");
        check_vr(vr_hat, geom.size());

        const Segment s = masked_channel(geom, l_hat, vr_hat);
        const auto x = probe.segment(vr_hat.start - 1, vr_hat.count());
        const cdouble htx = (s.a.transpose() * x).value();
        if (!(std::abs(htx) > 1e-14 * std::sqrt(s.norm2) * probe.norm()))
            throw UnidentifiableB("estimate_b: h^T x vanishes at the estimated position");
        const cdouble hy = s.a.dot(y_bar.segment(vr_hat.start - 1, vr_hat.count()));
        return hy / (double(slot_len) * htx * s.norm2);
    }

    LocalizationResult locate_3d_aco(const ArrayGeometry &geom, const Eigen::VectorXcd &y_bar,
                                     const VisibilityRegion &vr_hat, const SearchBox &box,
                                     const Eigen::VectorXcd &probe, int slot_len,
                                     const LocalizationOptions &options)
    {
        if (options.max_iters < 1 || options.line_search_iters < 1 || !(options.tol > 0.0))
            throw InvalidArgument("locate_3d_aco: invalid options");

        const GridPoint start = coarse_grid_search(geom, y_bar, vr_hat, box, options.coarse_grid, options.execution);

        auto f = [&](const Eigen::Vector3d &p) { return objective_unchecked(geom, y_bar, p, vr_hat); };

        LocalizationResult res;
        Eigen::Vector3d p = start.position;
        double fp = start.objective;
        const double box_diag = (box.hi - box.lo).norm();
        const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
        res.trace.push_back(fp);

        for (int it = 1; it <= options.max_iters; ++it)
        {
            res.iterations = it;
            const Eigen::Vector3d cycle_start = p;

            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(curvature_metric(geom, p, vr_hat));
            for (int c = 0; c < 3; ++c)
            {
                const Eigen::Vector3d dir = eig.eigenvectors().col(c);
                const double g = eig.eigenvalues()[c];
                const double reach = g > 0.0 ? std::min(1.0 / std::sqrt(g), box_diag) : box_diag;
                auto [t_lo, t_hi] = box_interval(box, p, dir);
                double a = std::max(t_lo, -reach);
                double b = std::min(t_hi, reach);

                auto phi = [&](double t) { return f(clamp_to_box(box, p + t * dir)); };
                double t1 = b - golden * (b - a), t2 = a + golden * (b - a);
                double f1 = phi(t1), f2 = phi(t2);
                for (int k = 0; k < options.line_search_iters; ++k)
                {
                    if (f1 >= f2)
                    {
                        b = t2;
                        t2 = t1;
                        f2 = f1;
                        t1 = b - golden * (b - a);
                        f1 = phi(t1);
                    }
                    else
                    {
                        a = t1;
                        t1 = t2;
                        f1 = f2;
                        t2 = a + golden * (b - a);
                        f2 = phi(t2);
                    }
                }
                const double t_best = f1 >= f2 ? t1 : t2;
                const double f_best = std::max(f1, f2);
                if (f_best > fp)
                {
                    p = clamp_to_box(box, p + t_best * dir);
                    fp = f_best;
                }
            }
            assert(fp >= res.trace.back());
            res.trace.push_back(fp);

            if ((p - cycle_start).norm() < options.tol)
            {
                res.converged = true;
                break;
            }
        }

        res.position = p;
        res.objective = fp;
        res.b_hat = estimate_b(geom, y_bar, p, vr_hat, probe, slot_len);
        return res;
    }
}
