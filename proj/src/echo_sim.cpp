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

#include "nfwpt/echo_sim.hpp"
#include "nfwpt/errors.hpp"

#include <cmath>

namespace nfwpt
{
    Eigen::VectorXcd uniform_probe(const ArrayGeometry &geom, double p_max)
    {
        if (!(p_max > 0.0))
            throw InvalidArgument("uniform_probe: p_max must be positive");
        const int n = geom.size();
        return Eigen::VectorXcd::Constant(n, cdouble(std::sqrt(p_max / double(n)), 0.0));
    }

    EchoBatch simulate_echo(const ChannelVector &h, cdouble b, const Eigen::VectorXcd &probe, int slot_len,
                            double noise_power, Rng &rng)
    {
        if (h.size() != probe.size())
            throw InvalidArgument("simulate_echo: channel and probe lengths differ");
        if (slot_len < 1)
            throw InvalidArgument("simulate_echo: slot length must be >= 1");
        if (!(noise_power >= 0.0))
            throw InvalidArgument("simulate_echo: noise power must be non-negative");

        // h^T x, not h^H x: the echo travels the same reciprocal path twice
        const cdouble gain = b * (h.transpose() * probe).value();
        const Eigen::VectorXcd echo = gain * h;

        EchoBatch out;
        out.slot_len = slot_len;
        out.noise_power = noise_power;
        out.samples = echo.replicate(1, slot_len);

        if (noise_power > 0.0)
        {
            std::normal_distribution<double> normal(0.0, std::sqrt(noise_power / 2.0));
            for (int t = 0; t < slot_len; ++t)
                for (Eigen::Index n = 0; n < h.size(); ++n)
                {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    out.samples(n, t) += cdouble(re, im);
                }
        }
        return out;
    }

    Eigen::VectorXcd aggregate(const EchoBatch &batch)
    {
        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(batch.samples.rows());
        for (int t = 0; t < batch.samples.cols(); ++t)
            sum += batch.samples.col(t);
        return sum;
    }
}
