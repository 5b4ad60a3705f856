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

#include "nfwpt/array_geometry.hpp"
#include "nfwpt/config.hpp"
#include "nfwpt/crb_duration.hpp"
#include "nfwpt/echo_sim.hpp"
#include "nfwpt/errors.hpp"
#include "nfwpt/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{
    struct CommonOptions
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<int> trials;
        std::string out_path;
        std::string scheme;
        bool serial = false;
    };

    void add_common(CLI::App *cmd, CommonOptions &o)
    {
        cmd->add_option("--config", o.config_path, "Scenario JSON (defaults to the built-in scenario)");
        cmd->add_option("--seed", o.seed, "Master seed");
        cmd->add_option("--trials", o.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
        cmd->add_option("--out", o.out_path, "CSV output path (default: stdout)");
        cmd->add_option("--scheme", o.scheme, "proposed | perfect_csi | isotropic | equal_time | no_vr");
        cmd->add_flag("--serial", o.serial, "Run trials on one thread");
    }

    nfwpt::ScenarioConfig resolve(const CommonOptions &o)
    {
        nfwpt::ScenarioConfig cfg = o.config_path.empty() ? nfwpt::default_scenario() : nfwpt::load_config(o.config_path);
        if (o.seed)
            cfg.master_seed = *o.seed;
        if (o.trials)
            cfg.trials = *o.trials;
        if (!o.scheme.empty())
            cfg.scheme = nfwpt::parse_scheme(o.scheme);
        nfwpt::validate(cfg);
        return cfg;
    }

    void emit(const CommonOptions &o, const std::vector<nfwpt::SweepRow> &rows, int n_ers)
    {
        if (o.out_path.empty())
        {
            nfwpt::write_csv(std::cout, rows, n_ers);
            return;
        }
        std::ofstream out(o.out_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write '" + o.out_path + "'");
        nfwpt::write_csv(out, rows, n_ers);
    }

    nfwpt::Execution exec(const CommonOptions &o)
    {
        return o.serial ? nfwpt::Execution::serial : nfwpt::Execution::parallel;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Sensing-assisted near-field energy beam focusing simulator"};
    app.require_subcommand(1);

    CommonOptions sim_o, gam_o, pow_o, wgt_o, crb_o, cfg_o;
    std::vector<double> gamma_grid, pmax_grid{20, 25, 30, 35}, beta_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    int gamma_points = 10;
    double gamma_decades = 3.0;

    auto *sim = app.add_subcommand("simulate", "Run one scheme and print trial aggregates");
    add_common(sim, sim_o);

    auto *gam = app.add_subcommand("sweep-gamma", "Harvested power and sensing duration versus the CRB threshold");
    add_common(gam, gam_o);
    gam->add_option("--grid", gamma_grid, "Gamma values in m^2 (default: log grid from the feasibility floor)")
        ->delimiter(',');
    gam->add_option("--points", gamma_points, "Points of the default grid")->check(CLI::PositiveNumber);
    gam->add_option("--decades", gamma_decades, "Decades spanned by the default grid");

    auto *pow = app.add_subcommand("sweep-power", "Harvested power versus p_max (dBm) for every scheme");
    add_common(pow, pow_o);
    pow->add_option("--grid", pmax_grid, "p_max values in dBm")->delimiter(',');

    auto *wgt = app.add_subcommand("sweep-weight", "Harvested power versus the energy weight of ER 2");
    add_common(wgt, wgt_o);
    wgt->add_option("--grid", beta_grid, "beta_2 values in [0, 1]")->delimiter(',');

    auto *crb = app.add_subcommand("crb", "Print planning CRBs and the optimised sensing duration");
    add_common(crb, crb_o);

    auto *cfg = app.add_subcommand("config", "Print the effective scenario as JSON");
    add_common(cfg, cfg_o);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*sim)
        {
            const auto c = resolve(sim_o);
            const auto results = nfwpt::run_trials(c, exec(sim_o));
            const auto s = nfwpt::summarize(c, results);
            std::cout << "scheme        " << nfwpt::to_string(c.scheme) << "\n"
                      << "trials        " << s.trials << "\n"
                      << std::setprecision(6) << "tau_mean      " << s.tau_mean << "\n"
                      << "duty_factor   " << s.duty_factor << "\n";
            for (std::size_t k = 0; k < s.power_mean.size(); ++k)
                std::cout << "power_er" << k + 1 << "     " << s.power_mean[k] << " W (+- " << s.power_sem[k] << ")\n";
            std::cout << "weighted      " << s.weighted_power_mean << " W\n"
                      << "vr_hit_rate   " << s.vr_hit_rate << "\n"
                      << "pos_rmse_m    " << s.pos_rmse << "\n";
            if (!sim_o.out_path.empty())
                emit(sim_o, {{c.gamma, c.scheme, s}}, int(c.ers.size()));
        }
        else if (*gam)
        {
            const auto c = resolve(gam_o);
            if (gamma_grid.empty())
                gamma_grid = nfwpt::default_gamma_grid(c, gamma_points, gamma_decades);
            emit(gam_o, nfwpt::sweep_gamma(c, gamma_grid, exec(gam_o)), int(c.ers.size()));
        }
        else if (*pow)
        {
            const auto c = resolve(pow_o);
            std::vector<nfwpt::Scheme> schemes{nfwpt::Scheme::proposed, nfwpt::Scheme::perfect_csi,
                                               nfwpt::Scheme::isotropic, nfwpt::Scheme::equal_time,
                                               nfwpt::Scheme::no_vr};
            if (!pow_o.scheme.empty())
                schemes = {c.scheme};
            emit(pow_o, nfwpt::sweep_pmax(c, pmax_grid, schemes, exec(pow_o)), int(c.ers.size()));
        }
        else if (*wgt)
        {
            const auto c = resolve(wgt_o);
            emit(wgt_o, nfwpt::sweep_beta(c, beta_grid, exec(wgt_o)), int(c.ers.size()));
        }
        else if (*crb)
        {
            const auto c = resolve(crb_o);
            const auto geom = nfwpt::build_upa(c.array.n_y, c.array.n_z, c.array.carrier_freq);
            const auto probe = nfwpt::uniform_probe(geom, c.p_max);
            const auto scene = nfwpt::draw_scene(c, nfwpt::trial_seed(c, 0));
            std::vector<nfwpt::PlanningPrior> priors;
            std::cout << std::setprecision(10) << "N = " << geom.size() << ", lambda = " << geom.wavelength
                      << " m, crb_mode = " << nfwpt::to_string(c.crb_mode) << " (trial 0 VRs)\n";
            for (std::size_t k = 0; k < c.ers.size(); ++k)
            {
                const auto &e = c.ers[k];
                const nfwpt::cdouble b = e.reflection ? *e.reflection : nfwpt::cdouble(e.reflection_magnitude, 0.0);
                priors.push_back({e.prior_position, scene.ers[k].vr, b, e.error_bounds});
                std::cout << "ER" << k + 1 << ": VR (" << scene.ers[k].vr.start << ", " << scene.ers[k].vr.end
                          << "), CRB(tau=1) nominal = "
                          << nfwpt::planning_crb(geom, priors.back(), probe, c.noise_power, nfwpt::CrbMode::nominal)
                          << " m^2, worst-case = "
                          << nfwpt::planning_crb(geom, priors.back(), probe, c.noise_power, nfwpt::CrbMode::worst_case)
                          << " m^2\n";
            }
            std::cout << "gamma = " << c.gamma << " m^2 -> tau* = "
                      << nfwpt::min_sensing_duration(geom, priors, c.gamma, c.block_len, probe, c.noise_power,
                                                     c.crb_mode)
                      << " symbols\n";
        }
        else if (*cfg)
        {
            std::cout << nfwpt::dump_config(resolve(cfg_o)) << "\n";
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
