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

#ifndef NFWPT_VR_IDENTIFICATION_HPP
#define NFWPT_VR_IDENTIFICATION_HPP

#include "nfwpt/channel_model.hpp"

#include <Eigen/Dense>

namespace nfwpt
{
    struct PowerLevels
    {
        double p_out = 0.0; // mean of the n_alpha smallest |y_n|
        double p_in = 0.0;  // mean of the n_alpha largest |y_n|
    };

    // Order-statistic estimates of the outside/inside echo magnitude levels.
    // Requires 1 <= n_alpha <= N / 2.
    PowerLevels estimate_power_levels(const Eigen::VectorXcd &y_bar, int n_alpha);

    // Midpoint threshold (p_out + p_in) / 2. A degenerate p_out == p_in emits a warning
    // and returns p_in.
    double scaling_factor(double p_out, double p_in);
    inline double scaling_factor(const PowerLevels &p) { return scaling_factor(p.p_out, p.p_in); }

    // Sliding-window objective
    //   f(s, e) = sum_{n < s} |y_n| + sum_{n > e} |y_n| + alpha (e - s + 1)
    // evaluated directly (O(N) per window). Used for reporting and in tests.
    double window_objective(const Eigen::VectorXcd &y_bar, const VisibilityRegion &window, double alpha);

    // Exhaustive minimisation of f over s in 1..N - ceil(eta N), e in s + ceil(eta N)..N
    // using prefix sums. Ties go to the smaller window, then the smaller start.
    // Throws Infeasible when no window fits.
    VisibilityRegion identify_vr(const Eigen::VectorXcd &y_bar, double eta, double alpha);
}

#endif
