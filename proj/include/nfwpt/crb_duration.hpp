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

#ifndef NFWPT_CRB_DURATION_HPP
#define NFWPT_CRB_DURATION_HPP

#include "nfwpt/array_geometry.hpp"
#include "nfwpt/channel_model.hpp"

#include <Eigen/Dense>
#include <array>
#include <span>

namespace nfwpt
{
    using Matrix5d = Eigen::Matrix<double, 5, 5>;

    // theta = [x, y, z, Re b, Im b]
    struct UnknownParams
    {
        double x = 0.0, y = 0.0, z = 0.0; // m
        double b_re = 0.0, b_im = 0.0;
    };

    struct FisherInfo
    {
        Matrix5d per_symbol = Matrix5d::Zero(); // F(1), ordered as UnknownParams
        int tau = 1;
        double noise_power = 0.0;

        // F(tau) = tau * F(1)
        Matrix5d matrix() const { return double(tau) * per_symbol; }
    };

    struct CrbReport
    {
        double crb_total = 0.0;              // m^2, trace of the position block of F^-1
        std::array<double, 3> per_axis{};    // m^2
        int tau = 1;
    };

    // (1 / tau) X X^H with X = [x, ..., x]; for the constant probe this is x x^H.
    Eigen::MatrixXcd sample_covariance(const Eigen::VectorXcd &probe, int slot_len);

    // Analytic FIM of the echo model Y = b h h^T X + Z for the constant probe.
    // The reflection factor enters the position-position blocks as |b|^2.
    // Throws SingularModel when the echo carries no energy (h^T x = 0).
    FisherInfo fim(const ArrayGeometry &geom, const ErState &er, const Eigen::VectorXcd &probe, int tau,
                   double noise_power);

    // Same FIM, with the quadratic forms evaluated against an explicit sample covariance.
    FisherInfo fim(const ArrayGeometry &geom, const ErState &er, const Eigen::MatrixXcd &sample_cov, int tau,
                   double noise_power);

    // Finite-difference FIM: F_ij = (2 tau / sigma^2) Re{ dmu_i^H dmu_j } with
    // mu = b h(l) (h(l)^T x), central differences of step 1e-7 m in position and
    // exact derivatives in b. Shares only steering_vector with the analytic path.
    Matrix5d fim_numeric_oracle(const ArrayGeometry &geom, const ErState &er, const Eigen::VectorXcd &probe,
                                int tau, double noise_power);

    // Position CRB from F^-1 = F(1)^-1 / tau. F(1) is equilibrated by powers of two
    // and inverted in extended precision with one refinement step; SingularFim is
    // raised when the unit-diagonal scaling of F(1) has condition number >= 1e12.
    CrbReport crb_position(const FisherInfo &fi);

    enum class CrbMode
    {
        worst_case, // max over the 27-point lattice prior + {-D, 0, D}^3
        nominal     // prior position only
    };

    // What the AP knows about an ER when planning the sensing slot
    struct PlanningPrior
    {
        Eigen::Vector3d position = Eigen::Vector3d::Zero(); // previous-block estimate
        VisibilityRegion vr;
        cdouble reflection{1.0, 0.0};
        Eigen::Vector3d error_bounds = Eigen::Vector3d::Zero(); // (D_x, D_y, D_z)
    };

    // crb_total at slot length tau for one ER under the chosen mode
    double planning_crb(const ArrayGeometry &geom, const PlanningPrior &prior, const Eigen::VectorXcd &probe,
                        double noise_power, CrbMode mode = CrbMode::worst_case, int tau = 1);

    // Smallest integer tau >= 1 with max_k planning_crb(k, tau) <= gamma, i.e.
    // ceil(max_k planning_crb(k, 1) / gamma). K is priors.size().
    // Throws InfeasibleBlock if K * tau >= block_len.
    int min_sensing_duration(const ArrayGeometry &geom, std::span<const PlanningPrior> priors, double gamma,
                             int block_len, const Eigen::VectorXcd &probe, double noise_power,
                             CrbMode mode = CrbMode::worst_case);
}

#endif
