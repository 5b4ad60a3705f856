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

#ifndef NFWPT_HARNESS_HPP
#define NFWPT_HARNESS_HPP

#include "nfwpt/config.hpp"
#include "nfwpt/execution.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace nfwpt
{
    // Ground truth of one trial, shared by every scheme run with the same seed
    struct Scene
    {
        std::vector<ErState> ers;
        std::uint64_t seed = 0;
    };

    struct TrialResult
    {
        std::vector<double> power;                  // per-ER average harvested power, W
        std::vector<double> pos_error;              // m; NaN when the scheme does not localise
        std::vector<std::optional<bool>> vr_hit;    // exact VR recovery; empty when not attempted
        int tau_used = 0;
        double duty_factor = 1.0;
        std::uint64_t seed = 0;

        double weighted_power(std::span<const double> weights) const;
    };

    // Trial seed = derive_seed(master_seed, trial_index). Sub-stream 0 draws the
    // scene; sub-stream 1 + k drives the echo noise of ER k.
    std::uint64_t trial_seed(const ScenarioConfig &cfg, int trial_index);

    // True positions uniform in prior +- D; VR fixed or a random contiguous
    // window of ceil(eta N) + 1 + Geometric(mean vr_slack_mean) elements (capped at
    // N - n_alpha) with a uniform start; b fixed or |b| with a uniform phase.
    Scene draw_scene(const ScenarioConfig &cfg, std::uint64_t seed);

    // One block of the two-stage protocol under cfg.scheme.
    TrialResult run_trial(const ScenarioConfig &cfg, int trial_index, Execution inner = Execution::serial);

    // All cfg.trials trials; results are independent of the execution mode.
    std::vector<TrialResult> run_trials(const ScenarioConfig &cfg, Execution execution = Execution::parallel);

    struct Summary
    {
        int trials = 0;
        double tau_mean = 0.0;
        double duty_factor = 0.0;
        std::vector<double> power_mean; // per ER, W
        std::vector<double> power_sem;  // standard error of the mean
        double weighted_power_mean = 0.0;
        double weighted_power_sem = 0.0;
        double vr_hit_rate = 0.0; // NaN when no VR was identified
        double pos_rmse = 0.0;    // NaN when no position was estimated
    };

    Summary summarize(const ScenarioConfig &cfg, std::span<const TrialResult> results);

    // Smallest gamma for which every trial of cfg stays feasible: the largest
    // planning CRB at tau = 1 over all trial scenes divided by the longest
    // admissible slot floor((T - 1) / K).
    double feasible_gamma_floor(const ScenarioConfig &cfg);

    // n log-spaced values from feasible_gamma_floor(cfg) (times a small guard) across `decades` decades
    std::vector<double> default_gamma_grid(const ScenarioConfig &cfg, int n = 10, double decades = 3.0);

    struct SweepRow
    {
        double sweep_value = 0.0;
        Scheme scheme = Scheme::proposed;
        Summary summary;
    };

    // cfg.scheme over a grid of CRB thresholds (m^2)
    std::vector<SweepRow> sweep_gamma(const ScenarioConfig &cfg, std::span<const double> gamma_grid,
                                      Execution execution = Execution::parallel);

    // Each scheme over a grid of p_max values given in dBm
    std::vector<SweepRow> sweep_pmax(const ScenarioConfig &cfg, std::span<const double> pmax_dbm_grid,
                                     std::span<const Scheme> schemes, Execution execution = Execution::parallel);

    // K = 2 only: beta_2 over the grid, beta_1 = 1 - beta_2
    std::vector<SweepRow> sweep_beta(const ScenarioConfig &cfg, std::span<const double> beta2_grid,
                                     Execution execution = Execution::parallel);

    // Header plus one row per SweepRow:
    //   sweep_value,scheme,tau_mean,duty_factor,power_er1_watts,...,vr_hit_rate,pos_rmse_m
    // Classic locale, 15 significant digits, "nan" for not-applicable fields.
    void write_csv(std::ostream &out, std::span<const SweepRow> rows, int n_ers);
}

#endif
