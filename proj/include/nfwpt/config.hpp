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

#ifndef NFWPT_CONFIG_HPP
#define NFWPT_CONFIG_HPP

#include "nfwpt/channel_model.hpp"
#include "nfwpt/crb_duration.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfwpt
{
    enum class Scheme
    {
        proposed,    // CRB-planned sensing, VR identification, localisation, focused beam
        perfect_csi, // exact channels, whole block for energy
        isotropic,   // R = (p_max / N) I over the whole block
        equal_time,  // as proposed with K tau = T / 2
        no_vr        // as proposed but the constructed channel uses the full array
    };

    std::string_view to_string(Scheme s);
    Scheme parse_scheme(std::string_view name); // throws InvalidArgument

    std::string_view to_string(CrbMode m);
    CrbMode parse_crb_mode(std::string_view name);

    double dbm_to_watts(double dbm);
    double watts_to_dbm(double watts);

    struct ArrayConfig
    {
        int n_y = 16;
        int n_z = 16;
        double carrier_freq = 28e9; // Hz
    };

    struct ErConfig
    {
        Eigen::Vector3d prior_position = Eigen::Vector3d::Zero();              // m
        Eigen::Vector3d error_bounds = Eigen::Vector3d::Constant(0.15);        // (D_x, D_y, D_z), m
        double weight = 1.0;                                                   // beta
        double reflection_magnitude = 331.0;                                   // |b| of a 1 m^2 target at 28 GHz; phase uniform per trial
        std::optional<cdouble> reflection;                                     // fixed b, overrides the above
        std::optional<VisibilityRegion> vr;                                    // fixed VR instead of a random draw
    };

    // JSON keys match the field names below; unknown keys are rejected and missing
    // keys keep their defaults. An ER's "reflection" is either a number (|b|, random
    // phase) or a [re, im] pair (fixed b); "vr" is an optional [start, end] pair.
    struct ScenarioConfig
    {
        ArrayConfig array;
        double noise_power = 1e-15; // sigma_r^2, W (-120 dBm)
        double p_max = 1.0;         // W (30 dBm)
        int block_len = 200;        // T, symbols
        std::vector<ErConfig> ers;
        double eta = 0.25;
        int n_alpha = 32;
        double gamma = 1e4;         // CRB threshold, m^2
        int trials = 100;
        std::uint64_t master_seed = 1;
        Scheme scheme = Scheme::proposed;

        CrbMode crb_mode = CrbMode::worst_case;
        double vr_slack_mean = 32.0;          // mean extra elements beyond ceil(eta N) + 1
        std::optional<Eigen::Vector3d> search_margin; // added to D per axis; default D
        int coarse_grid = 9;                  // lattice points per axis
        double localization_tol = 1e-4;       // m
        int localization_max_iters = 50;

        int n_elements() const { return array.n_y * array.n_z; }
    };

    // Throws InvalidArgument on any violated invariant.
    void validate(const ScenarioConfig &cfg);

    ScenarioConfig default_scenario();

    ScenarioConfig parse_config(std::string_view json_text);
    ScenarioConfig load_config(const std::string &path);
    std::string dump_config(const ScenarioConfig &cfg);
}

#endif
