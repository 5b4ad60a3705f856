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

#include "nfwpt/beamforming.hpp"
#include "nfwpt/errors.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace nfwpt
{
    namespace
    {
        // Rotate so the largest-magnitude entry is real and positive.
        void normalise_phase(Eigen::VectorXcd &v)
        {
            Eigen::Index imax = 0;
            v.cwiseAbs2().maxCoeff(&imax);
            const double mag = std::abs(v[imax]);
            if (mag > 0.0)
                v *= std::conj(v[imax]) / mag;
            v[imax] = cdouble(v[imax].real(), 0.0);
        }

        BeamformerSolution finish(Eigen::VectorXcd v, double lambda, double p_max,
                                  const Eigen::MatrixXcd *a, std::span<const ChannelVector> channels,
                                  std::span<const double> weights)
        {
            v.normalize();
            normalise_phase(v);
            BeamformerSolution sol;
            sol.power = p_max;
            sol.certificate = lambda;
            double quad = 0.0;
            if (a)
                quad = v.dot(*a * v).real();
            else
                for (std::size_t k = 0; k < channels.size(); ++k)
                    quad += weights[k] * std::norm(channels[k].dot(v));
            sol.objective = p_max * quad;
            sol.direction = std::move(v);
            return sol;
        }

        void check_weights(std::span<const ChannelVector> channels, std::span<const double> weights)
        {
            if (channels.size() != weights.size())
                throw InvalidArgument("beamforming: channel and weight lists differ in length");
            if (channels.empty())
                throw InvalidArgument("beamforming: need at least one channel");
            for (double w : weights)
                if (!(w >= 0.0))
                    throw InvalidArgument("beamforming: energy weights must be non-negative");
            for (const auto &h : channels)
                if (h.size() != channels.front().size())
                    throw InvalidArgument("beamforming: channels differ in length");
        }
    }

    Eigen::MatrixXcd weighted_channel_matrix(std::span<const ChannelVector> channels,
                                             std::span<const double> weights)
    {
        check_weights(channels, weights);
        const auto n = channels.front().size();
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t k = 0; k < channels.size(); ++k)
            a.noalias() += weights[k] * channels[k] * channels[k].adjoint();
        return a;
    }

    BeamformerSolution solve_p4(const Eigen::MatrixXcd &a, double p_max)
    {
        if (!(p_max > 0.0))
            throw InvalidArgument("solve_p4: p_max must be positive");
        if (a.rows() != a.cols() || a.rows() == 0)
            throw InvalidArgument("solve_p4: A must be square and non-empty");
        const double scale = a.norm();
        if ((a - a.adjoint()).norm() > 1e-8 * scale)
            throw InvalidArgument("solve_p4: A is not Hermitian");

        const auto n = a.rows();
        if (scale == 0.0)
            return finish(Eigen::VectorXcd::Unit(n, 0), 0.0, p_max, &a, {}, {});

        const Eigen::MatrixXcd herm = 0.5 * (a + a.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("solve_p4: eigensolver did not converge");
        Eigen::VectorXcd v = eig.eigenvectors().col(n - 1);
        double lambda = eig.eigenvalues()[n - 1];

        // Rayleigh-quotient polish until the residual meets the tolerance
        for (int it = 0; it < 50; ++it)
        {
            const Eigen::VectorXcd av = herm * v;
            lambda = v.dot(av).real();
            if ((av - lambda * v).norm() <= 1e-10 * scale)
                break;
            v = av.normalized();
        }
        return finish(std::move(v), lambda, p_max, &a, {}, {});
    }

    BeamformerSolution solve_p4_low_rank(std::span<const ChannelVector> channels, std::span<const double> weights,
                                         double p_max)
    {
        if (!(p_max > 0.0))
            throw InvalidArgument("solve_p4_low_rank: p_max must be positive");
        check_weights(channels, weights);
        const auto n = channels.front().size();
        const auto k = Eigen::Index(channels.size());

        Eigen::MatrixXcd hb(n, k); // H B^1/2
        for (Eigen::Index i = 0; i < k; ++i)
            hb.col(i) = std::sqrt(weights[i]) * channels[i];
        const Eigen::MatrixXcd gram = hb.adjoint() * hb;
        if (gram.norm() == 0.0)
            return finish(Eigen::VectorXcd::Unit(n, 0), 0.0, p_max, nullptr, channels, weights);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
        const double lambda = eig.eigenvalues()[k - 1];
        return finish(hb * eig.eigenvectors().col(k - 1), lambda, p_max, nullptr, channels, weights);
    }

    double harvested_power(const ChannelVector &h_true, const BeamformerSolution &solution)
    {
        if (h_true.size() != solution.direction.size())
            throw InvalidArgument("harvested_power: channel length does not match the beamformer");
        return solution.power * std::norm(h_true.dot(solution.direction));
    }

    double duty_factor(int tau, int n_ers, int block_len)
    {
        if (block_len < 1 || n_ers < 1 || tau < 0)
            throw InvalidArgument("duty_factor: need T >= 1, K >= 1, tau >= 0");
        const long long sensing = static_cast<long long>(n_ers) * tau;
        if (sensing >= block_len)
            throw InfeasibleBlock("K * tau = " + std::to_string(sensing) + " >= T = " + std::to_string(block_len));
        return double(block_len - sensing) / double(block_len);
    }

    double average_harvested_power(const ChannelVector &h_true, const BeamformerSolution &solution, int tau,
                                   int n_ers, int block_len)
    {
        return duty_factor(tau, n_ers, block_len) * harvested_power(h_true, solution);
    }

    IsotropicCovariance isotropic_covariance(double p_max, int n_elements)
    {
        if (!(p_max > 0.0) || n_elements < 1)
            throw InvalidArgument("isotropic_covariance: need p_max > 0 and N >= 1");
        return {p_max, n_elements};
    }

    Eigen::MatrixXcd IsotropicCovariance::covariance() const
    {
        return Eigen::MatrixXcd::Identity(n_elements, n_elements) * cdouble(p_max / double(n_elements), 0.0);
    }

    double IsotropicCovariance::harvested_power(const ChannelVector &h_true) const
    {
        if (h_true.size() != n_elements)
            throw InvalidArgument("isotropic harvested_power: channel length mismatch");
        return p_max / double(n_elements) * h_true.squaredNorm();
    }
}
