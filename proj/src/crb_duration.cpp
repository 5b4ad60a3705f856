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

#include "nfwpt/crb_duration.hpp"
#include "nfwpt/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace nfwpt
{
    namespace
    {
        void check_fim_args(const ArrayGeometry &geom, const ErState &er, Eigen::Index probe_len, int tau,
                            double noise_power)
        {
            if (probe_len != geom.size())
                throw InvalidArgument("fim: probe length does not match the array");
            if (tau < 1)
                throw InvalidArgument("fim: tau must be >= 1");
            if (!(noise_power > 0.0))
                throw InvalidArgument("fim: noise power must be positive");
            check_vr(er.vr, geom.size());
        }

        // Assembles the 5x5 real FIM from the complex blocks; qf(u, v) = u^H S_x^* v.
        template <typename QuadForm>
        Matrix5d assemble(const ArrayGeometry &geom, const ErState &er, QuadForm &&qf, double noise_power)
        {
            const ChannelVector h = channel(geom, er);
            const double hh = h.squaredNorm();
            if (!(hh > 0.0))
                throw SingularModel("fim: channel is identically zero");

            std::array<ChannelVector, 3> dh;
            for (int u = 0; u < 3; ++u)
                dh[u] = channel_derivative(geom, er.position, er.vr, Axis(u));

            const cdouble b = er.reflection;
            const double b2 = std::norm(b);
            const cdouble q_hh = qf(h, h);
            if (!(q_hh.real() > 0.0))
                throw SingularModel("fim: the probe delivers no energy to the target (h^T x = 0)");

            std::array<std::array<cdouble, 3>, 3> f_uv{};
            std::array<cdouble, 3> f_ub{};
            for (int u = 0; u < 3; ++u)
            {
                const cdouble dh_h = dh[u].dot(h); // dh_u^H h
                const cdouble q_dh_h = qf(dh[u], h);
                for (int v = 0; v < 3; ++v)
                {
                    f_uv[u][v] = b2 * (dh[u].dot(dh[v]) * q_hh + dh_h * qf(h, dh[v]) +
                                       h.dot(dh[v]) * q_dh_h + hh * qf(dh[u], dh[v]));
                }
                f_ub[u] = dh_h * std::conj(b) * q_hh + hh * std::conj(b) * q_dh_h;
            }
            const cdouble f_bb = hh * q_hh;

            Matrix5d f;
            for (int u = 0; u < 3; ++u)
            {
                for (int v = 0; v < 3; ++v)
                    f(u, v) = f_uv[u][v].real();
                f(u, 3) = f(3, u) = f_ub[u].real();
                f(u, 4) = f(4, u) = -f_ub[u].imag();
            }
            f(3, 3) = f(4, 4) = f_bb.real();
            f(3, 4) = f(4, 3) = -f_bb.imag();

            // symmetrise away rounding in Re(F_uv) vs Re(F_vu)
            return (2.0 / noise_power) * (0.5 * (f + f.transpose()));
        }

        FisherInfo scaled(const Matrix5d &unit, int tau, double noise_power)
        {
            FisherInfo fi;
            fi.per_symbol = unit;
            fi.tau = tau;
            fi.noise_power = noise_power;
            return fi;
        }
    }

    Eigen::MatrixXcd sample_covariance(const Eigen::VectorXcd &probe, int slot_len)
    {
        if (slot_len < 1)
            throw InvalidArgument("sample_covariance: slot length must be >= 1");
        const Eigen::MatrixXcd x = probe.replicate(1, slot_len);
        return (x * x.adjoint()) / double(slot_len);
    }

    FisherInfo fim(const ArrayGeometry &geom, const ErState &er, const Eigen::VectorXcd &probe, int tau,
                   double noise_power)
    {
        check_fim_args(geom, er, probe.size(), tau, noise_power);
        // S_x = x x^H, so u^H S_x^* v = conj(x^T u) (x^T v)
        auto qf = [&](const ChannelVector &u, const ChannelVector &v)
        {
            return std::conj((probe.transpose() * u).value()) * (probe.transpose() * v).value();
        };
        return scaled(assemble(geom, er, qf, noise_power), tau, noise_power);
    }

    FisherInfo fim(const ArrayGeometry &geom, const ErState &er, const Eigen::MatrixXcd &sample_cov, int tau,
                   double noise_power)
    {
        check_fim_args(geom, er, sample_cov.rows(), tau, noise_power);
        if (sample_cov.cols() != sample_cov.rows())
            throw InvalidArgument("fim: sample covariance must be square");
        const Eigen::MatrixXcd s_conj = sample_cov.conjugate();
        auto qf = [&](const ChannelVector &u, const ChannelVector &v) { return u.dot(s_conj * v); };
        return scaled(assemble(geom, er, qf, noise_power), tau, noise_power);
    }

    Matrix5d fim_numeric_oracle(const ArrayGeometry &geom, const ErState &er, const Eigen::VectorXcd &probe,
                                int tau, double noise_power)
    {
        check_fim_args(geom, er, probe.size(), tau, noise_power);
        const Eigen::VectorXd mask = vr_cover(er.vr, geom.size());

        auto masked = [&](const Eigen::Vector3d &l) -> Eigen::VectorXcd
        { return steering_vector(geom, l).cwiseProduct(mask.cast<cdouble>()); };
        auto echo_shape = [&](const Eigen::Vector3d &l) -> Eigen::VectorXcd
        {
            const Eigen::VectorXcd h = masked(l);
            return h * (h.transpose() * probe).value();
        };

        if (!(masked(er.position).squaredNorm() > 0.0))
            throw SingularModel("fim_numeric_oracle: channel is identically zero");
        const Eigen::VectorXcd base = echo_shape(er.position);

        const double step = 1e-7;
        std::array<Eigen::VectorXcd, 5> d;
        for (int u = 0; u < 3; ++u)
        {
            Eigen::Vector3d lp = er.position, lm = er.position;
            lp[u] += step;
            lm[u] -= step;
            d[u] = er.reflection * (echo_shape(lp) - echo_shape(lm)) / (2.0 * step);
        }
        d[3] = base;
        d[4] = cdouble(0.0, 1.0) * base;

        Matrix5d f;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                f(i, j) = d[i].dot(d[j]).real();
        return double(tau) * ((2.0 / noise_power) * f);
    }

    CrbReport crb_position(const FisherInfo &fi)
    {
        using Matrix5ld = Eigen::Matrix<long double, 5, 5>;
        const Matrix5d &f = fi.per_symbol;
        if (fi.tau < 1)
            throw InvalidArgument("crb_position: tau must be >= 1");
        if (!f.allFinite())
            throw SingularFim("crb_position: FIM has non-finite entries");
        if ((f.diagonal().array() <= 0.0).any())
            throw SingularFim("crb_position: FIM has a non-positive diagonal entry");

        // power-of-two scaling keeps the equilibrated matrix exact
        Eigen::Matrix<double, 5, 1> s;
        for (int i = 0; i < 5; ++i)
            s(i) = std::ldexp(1.0, -std::ilogb(std::sqrt(f(i, i))));
        const Matrix5d eq = s.asDiagonal() * f * s.asDiagonal();

        // conditioning is judged on the unit-diagonal form
        const Eigen::Matrix<double, 5, 1> unit = eq.diagonal().cwiseSqrt().cwiseInverse();
        const Matrix5d corr = unit.asDiagonal() * eq * unit.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Matrix5d> eig(corr, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues()[0];
        const double lmax = eig.eigenvalues()[4];
        if (!(lmin > 0.0) || lmax / lmin >= 1e12)
            throw SingularFim("crb_position: FIM is singular or ill-conditioned (cond = " +
                              std::to_string(lmin > 0.0 ? lmax / lmin : INFINITY) + ")");

        const Matrix5ld eq_ld = eq.cast<long double>();
        Matrix5ld inv = eq_ld.fullPivLu().inverse();
        inv += inv * (Matrix5ld::Identity() - eq_ld * inv);

        CrbReport r;
        r.tau = fi.tau;
        for (int u = 0; u < 3; ++u)
            r.per_axis[u] = double(inv(u, u) * s(u) * s(u)) / double(fi.tau);
        r.crb_total = r.per_axis[0] + r.per_axis[1] + r.per_axis[2];
        return r;
    }

    double planning_crb(const ArrayGeometry &geom, const PlanningPrior &prior, const Eigen::VectorXcd &probe,
                        double noise_power, CrbMode mode, int tau)
    {
        ErState er;
        er.vr = prior.vr;
        er.reflection = prior.reflection;

        if (mode == CrbMode::nominal)
        {
            er.position = prior.position;
            return crb_position(fim(geom, er, probe, tau, noise_power)).crb_total;
        }

        double worst = 0.0;
        for (int ix = -1; ix <= 1; ++ix)
            for (int iy = -1; iy <= 1; ++iy)
                for (int iz = -1; iz <= 1; ++iz)
                {
                    er.position = prior.position + Eigen::Vector3d(ix, iy, iz).cwiseProduct(prior.error_bounds);
                    worst = std::max(worst, crb_position(fim(geom, er, probe, tau, noise_power)).crb_total);
                }
        return worst;
    }

    int min_sensing_duration(const ArrayGeometry &geom, std::span<const PlanningPrior> priors, double gamma,
                             int block_len, const Eigen::VectorXcd &probe, double noise_power, CrbMode mode)
    {
        if (!(gamma > 0.0))
            throw InvalidArgument("min_sensing_duration: gamma must be positive");
        if (priors.empty())
            throw InvalidArgument("min_sensing_duration: need at least one ER");

        double worst = 0.0;
        for (const auto &p : priors)
            worst = std::max(worst, planning_crb(geom, p, probe, noise_power, mode, 1));

        const double ratio = worst / gamma;
        if (!std::isfinite(ratio) || ratio >= double(block_len))
            throw InfeasibleBlock("min_sensing_duration: CRB threshold unreachable within the block");
        int tau = std::max(1, int(std::ceil(ratio)));
        // ceil() on a rounded quotient can be off by one at the boundary
        while (tau > 1 && worst / double(tau - 1) <= gamma)
            --tau;
        while (worst / double(tau) > gamma)
            ++tau;

        const auto k = static_cast<long long>(priors.size());
        if (k * tau >= block_len)
            throw InfeasibleBlock("min_sensing_duration: K * tau = " + std::to_string(k * tau) +
                                  " leaves no symbols for energy transfer (T = " + std::to_string(block_len) + ")");
        return tau;
    }
}
