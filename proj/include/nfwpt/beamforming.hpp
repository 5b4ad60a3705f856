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

#ifndef NFWPT_BEAMFORMING_HPP
#define NFWPT_BEAMFORMING_HPP

#include "nfwpt/channel_model.hpp"

#include <Eigen/Dense>
#include <span>

namespace nfwpt
{
    // Rank-one optimum R = power * v v^H of
    //   max_R  sum_k beta_k h_k^H R h_k   s.t.  R >= 0, tr(R) <= p_max
    struct BeamformerSolution
    {
        Eigen::VectorXcd direction; // unit norm, largest-magnitude entry real positive
        double power = 0.0;         // W, equals p_max
        double objective = 0.0;     // W, power * v^H A v
        double certificate = 0.0;   // lambda_max(A)

        Eigen::MatrixXcd covariance() const { return power * direction * direction.adjoint(); }
    };

    // A = sum_k beta_k h_k h_k^H
    Eigen::MatrixXcd weighted_channel_matrix(std::span<const ChannelVector> channels,
                                             std::span<const double> weights);

    // Principal eigenvector of a Hermitian PSD A (Householder tridiagonalisation + QR),
    // accepted when |A v - lambda v| <= 1e-10 |A|. A == 0 yields the first basis vector.
    // Throws InvalidArgument if A is not Hermitian to 1e-8 relative.
    BeamformerSolution solve_p4(const Eigen::MatrixXcd &a, double p_max);

    // Same optimum without forming the N x N matrix: the nonzero spectrum of
    // H B H^H equals that of the K x K matrix B^1/2 H^H H B^1/2.
    BeamformerSolution solve_p4_low_rank(std::span<const ChannelVector> channels, std::span<const double> weights,
                                         double p_max);

    // h^H R h = power |h^H v|^2
    double harvested_power(const ChannelVector &h_true, const BeamformerSolution &solution);

    // ((T - K tau) / T) * harvested_power. Throws InfeasibleBlock if K tau >= T;
    // tau = 0 (no sensing stage) is allowed.
    double average_harvested_power(const ChannelVector &h_true, const BeamformerSolution &solution, int tau,
                                   int n_ers, int block_len);

    // Isotropic benchmark R = (p_max / N) I
    struct IsotropicCovariance
    {
        double p_max = 0.0;
        int n_elements = 0;

        double trace() const { return p_max; }
        Eigen::MatrixXcd covariance() const;
        double harvested_power(const ChannelVector &h_true) const;
    };

    IsotropicCovariance isotropic_covariance(double p_max, int n_elements);

    // Fraction of the block left for energy transfer, (T - K tau) / T
    double duty_factor(int tau, int n_ers, int block_len);
}

#endif
