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

#include "nfwpt/vr_identification.hpp"
#include "nfwpt/diagnostics.hpp"
#include "nfwpt/errors.hpp"

#include <algorithm>
#include <vector>

namespace nfwpt
{
    PowerLevels estimate_power_levels(const Eigen::VectorXcd &y_bar, int n_alpha)
    {
        const auto n = int(y_bar.size());
        if (n_alpha < 1 || 2 * n_alpha > n)
            throw InvalidArgument("estimate_power_levels: n_alpha must lie in 1..N/2");

        std::vector<double> mag(n);
        for (int i = 0; i < n; ++i)
            mag[i] = std::abs(y_bar[i]);
        std::sort(mag.begin(), mag.end());

        PowerLevels p;
        for (int i = 0; i < n_alpha; ++i)
        {
            p.p_out += mag[i];
            p.p_in += mag[n - n_alpha + i];
        }
        p.p_out /= double(n_alpha);
        p.p_in /= double(n_alpha);
        return p;
    }

    double scaling_factor(double p_out, double p_in)
    {
        if (p_out == p_in)
        {
            warn("scaling_factor: p_out == p_in, echo magnitude is flat; using alpha = p_in");
            return p_in;
        }
        return 0.5 * (p_out + p_in);
    }

    double window_objective(const Eigen::VectorXcd &y_bar, const VisibilityRegion &window, double alpha)
    {
        const auto n = int(y_bar.size());
        check_vr(window, n);
        double outside = 0.0;
        for (int i = 1; i < window.start; ++i)
            outside += std::abs(y_bar[i - 1]);
        for (int i = window.end + 1; i <= n; ++i)
            outside += std::abs(y_bar[i - 1]);
        return outside + alpha * double(window.count());
    }

    VisibilityRegion identify_vr(const Eigen::VectorXcd &y_bar, double eta, double alpha)
    {
        if (!(eta > 0.0 && eta < 1.0))
            throw InvalidArgument("identify_vr: eta must lie in (0, 1)");
        const auto n = int(y_bar.size());
        const int span = std::max(1, min_vr_span(eta, n));
        const int last_start = n - span;
        if (last_start < 1)
            throw Infeasible("identify_vr: no window of span ceil(eta*N) fits in the array");

        // prefix[i] = sum of |y_1| .. |y_i|
        std::vector<double> prefix(n + 1, 0.0);
        for (int i = 0; i < n; ++i)
            prefix[i + 1] = prefix[i] + std::abs(y_bar[i]);
        const double total = prefix[n];

        VisibilityRegion best{1, 1 + span};
        double best_f = 0.0;
        bool have = false;
        for (int s = 1; s <= last_start; ++s)
            for (int e = s + span; e <= n; ++e)
            {
                const double f = prefix[s - 1] + (total - prefix[e]) + alpha * double(e - s + 1);
                const int size = e - s + 1;
                if (!have || f < best_f || (f == best_f && (size < best.count() || (size == best.count() && s < best.start))))
                {
                    best = {s, e};
                    best_f = f;
                    have = true;
                }
            }
        return best;
    }
}
