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

#ifndef NFWPT_ECHO_SIM_HPP
#define NFWPT_ECHO_SIM_HPP

#include "nfwpt/array_geometry.hpp"
#include "nfwpt/channel_model.hpp"
#include "nfwpt/rng.hpp"

#include <Eigen/Dense>

namespace nfwpt
{
    // Echo samples collected during one sensing slot
    struct EchoBatch
    {
        Eigen::MatrixXcd samples; // N x slot_len
        int slot_len = 0;
        double noise_power = 0.0; // sigma_r^2, W
    };

    // Constant probe sqrt(p_max / N) on every element
    Eigen::VectorXcd uniform_probe(const ArrayGeometry &geom, double p_max);

    // Y = b h h^T X + Z with X = [x, ..., x] (slot_len columns).
    //
    // Noise is drawn column-major; each entry takes two consecutive N(0, sigma_r^2 / 2)
    // draws from rng, real part first. No draws are made when noise_power == 0.
    EchoBatch simulate_echo(const ChannelVector &h, cdouble b, const Eigen::VectorXcd &probe, int slot_len,
                            double noise_power, Rng &rng);

    // Column sum over the slot
    Eigen::VectorXcd aggregate(const EchoBatch &batch);
}

#endif
