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

#include "nfwpt/harness.hpp"
#include "nfwpt/beamforming.hpp"
#include "nfwpt/crb_duration.hpp"
#include "nfwpt/echo_sim.hpp"
#include "nfwpt/errors.hpp"
#include "nfwpt/localization.hpp"
#include "nfwpt/rng.hpp"
#include "nfwpt/vr_identification.hpp"

#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>

namespace nfwpt
{
    namespace
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();

        std::vector<double> weights_of(const ScenarioConfig &cfg)
        {
            std::vector<double> w;
            for (const auto &er : cfg.ers)
                w.push_back(er.weight);
            return w;
        }

        // Reflection coefficient the AP plans with: the fixed b or |b| on the real axis
        // (the position CRB does not depend on the phase of b).
        cdouble nominal_reflection(const ErConfig &er)
        {
            return er.reflection ? *er.reflection : cdouble(er.reflection_magnitude, 0.0);
        }

        Eigen::Vector3d search_half_width(const ScenarioConfig &cfg, const ErConfig &er)
        {
            return er.error_bounds + cfg.search_margin.value_or(er.error_bounds);
        }

        struct Sensed
        {
            int tau = 0;
            std::vector<ChannelVector> constructed;
            std::vector<double> pos_error;
            std::vector<std::optional<bool>> vr_hit;
        };

        Sensed sense(const ScenarioConfig &cfg, const ArrayGeometry &geom, const Scene &scene, Execution inner)
        {
            const int k_ers = int(cfg.ers.size());
            const int n = geom.size();
            const Eigen::VectorXcd probe = uniform_probe(geom, cfg.p_max);

            Sensed s;
            if (cfg.scheme == Scheme::equal_time)
            {
                s.tau = cfg.block_len / (2 * k_ers);
                if (s.tau < 1)
                    throw InfeasibleBlock("equal_time: block too short for one symbol per slot");
            }
            else
            {
                std::vector<PlanningPrior> priors;
                for (int k = 0; k < k_ers; ++k)
                    priors.push_back({cfg.ers[k].prior_position, scene.ers[k].vr, nominal_reflection(cfg.ers[k]),
                                      cfg.ers[k].error_bounds});
                s.tau = min_sensing_duration(geom, priors, cfg.gamma, cfg.block_len, probe, cfg.noise_power,
                                             cfg.crb_mode);
            }

            LocalizationOptions opts;
            opts.coarse_grid = {cfg.coarse_grid, cfg.coarse_grid, cfg.coarse_grid};
            opts.tol = cfg.localization_tol;
            opts.max_iters = cfg.localization_max_iters;
            opts.execution = inner;

            for (int k = 0; k < k_ers; ++k)
            {
                const ErState &er = scene.ers[k];
                Rng rng(derive_seed(scene.seed, 1 + std::uint64_t(k)));
                const ChannelVector h = channel(geom, er);
                const Eigen::VectorXcd y_bar =
                    aggregate(simulate_echo(h, er.reflection, probe, s.tau, cfg.noise_power, rng));

                VisibilityRegion vr_hat{1, n};
                if (cfg.scheme == Scheme::no_vr)
                    s.vr_hit.emplace_back(std::nullopt);
                else
                {
                    const double alpha = scaling_factor(estimate_power_levels(y_bar, cfg.n_alpha));
                    vr_hat = identify_vr(y_bar, cfg.eta, alpha);
                    s.vr_hit.emplace_back(vr_hat == er.vr);
                }

                const SearchBox box = SearchBox::around(cfg.ers[k].prior_position, search_half_width(cfg, cfg.ers[k]));
                const LocalizationResult loc = locate_3d_aco(geom, y_bar, vr_hat, box, probe, s.tau, opts);
                s.constructed.push_back(channel(geom, loc.position, vr_hat));
                s.pos_error.push_back((loc.position - er.position).norm());
            }
            return s;
        }

        double mean_of(std::span<const double> v)
        {
            double s = 0.0;
            for (double x : v)
                s += x;
            return s / double(v.size());
        }

        double sem_of(std::span<const double> v)
        {
            if (v.size() < 2)
                return 0.0;
            const double m = mean_of(v);
            double ss = 0.0;
            for (double x : v)
                ss += (x - m) * (x - m);
            return std::sqrt(ss / double(v.size() - 1) / double(v.size()));
        }

        std::string fmt(double v)
        {
            if (std::isnan(v))
                return "nan";
            std::ostringstream os;
            os.imbue(std::locale::classic());
            os << std::setprecision(15) << v;
            return os.str();
        }
    }

    double TrialResult::weighted_power(std::span<const double> weights) const
    {
        double s = 0.0;
        for (std::size_t k = 0; k < power.size(); ++k)
            s += weights[k] * power[k];
        return s;
    }

    std::uint64_t trial_seed(const ScenarioConfig &cfg, int trial_index)
    {
        return derive_seed(cfg.master_seed, std::uint64_t(trial_index));
    }

    Scene draw_scene(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        const int n = cfg.n_elements();
        const int min_count = min_vr_span(cfg.eta, n) + 1;
        const int max_count = std::max(min_count, n - cfg.n_alpha);

        Rng rng(derive_seed(seed, 0));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::geometric_distribution<int> slack(1.0 / (1.0 + cfg.vr_slack_mean));
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

        Scene scene;
        scene.seed = seed;
        for (const auto &ec : cfg.ers)
        {
            ErState er;
            er.weight = ec.weight;
            for (int u = 0; u < 3; ++u)
                er.position[u] = ec.prior_position[u] + ec.error_bounds[u] * unit(rng);

            if (ec.vr)
                er.vr = *ec.vr;
            else
            {
                const int count = std::min(max_count, min_count + slack(rng));
                std::uniform_int_distribution<int> start(1, n - count + 1);
                const int s = start(rng);
                er.vr = {s, s + count - 1};
            }

            er.reflection = ec.reflection ? *ec.reflection : std::polar(ec.reflection_magnitude, phase(rng));
            scene.ers.push_back(er);
        }
        return scene;
    }

    TrialResult run_trial(const ScenarioConfig &cfg, int trial_index, Execution inner)
    {
        validate(cfg);
        const ArrayGeometry geom = build_upa(cfg.array.n_y, cfg.array.n_z, cfg.array.carrier_freq);
        const Scene scene = draw_scene(cfg, trial_seed(cfg, trial_index));
        const int k_ers = int(cfg.ers.size());
        const std::vector<double> weights = weights_of(cfg);

        std::vector<ChannelVector> h_true;
        for (const auto &er : scene.ers)
            h_true.push_back(channel(geom, er));

        TrialResult r;
        r.seed = scene.seed;
        switch (cfg.scheme)
        {
        case Scheme::perfect_csi:
        {
            const BeamformerSolution sol = solve_p4_low_rank(h_true, weights, cfg.p_max);
            for (const auto &h : h_true)
                r.power.push_back(average_harvested_power(h, sol, 0, k_ers, cfg.block_len));
            r.pos_error.assign(k_ers, 0.0);
            r.vr_hit.assign(k_ers, true);
            break;
        }
        case Scheme::isotropic:
        {
            const IsotropicCovariance iso = isotropic_covariance(cfg.p_max, geom.size());
            for (const auto &h : h_true)
                r.power.push_back(iso.harvested_power(h));
            r.pos_error.assign(k_ers, nan);
            r.vr_hit.assign(k_ers, std::nullopt);
            break;
        }
        case Scheme::proposed:
        case Scheme::equal_time:
        case Scheme::no_vr:
        {
            const Sensed s = sense(cfg, geom, scene, inner);
            const BeamformerSolution sol = solve_p4_low_rank(s.constructed, weights, cfg.p_max);
            for (const auto &h : h_true)
                r.power.push_back(average_harvested_power(h, sol, s.tau, k_ers, cfg.block_len));
            r.tau_used = s.tau;
            r.pos_error = s.pos_error;
            r.vr_hit = s.vr_hit;
            break;
        }
        }
        r.duty_factor = duty_factor(r.tau_used, k_ers, cfg.block_len);
        return r;
    }

    std::vector<TrialResult> run_trials(const ScenarioConfig &cfg, Execution execution)
    {
        validate(cfg);
        std::vector<TrialResult> out(cfg.trials);
        if (execution == Execution::serial)
        {
            for (int i = 0; i < cfg.trials; ++i)
                out[i] = run_trial(cfg, i);
            return out;
        }

        // exceptions cannot cross the parallel region; keep the one from the lowest trial
        std::vector<std::exception_ptr> errors(cfg.trials);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < cfg.trials; ++i)
        {
            try
            {
                out[i] = run_trial(cfg, i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);
        return out;
    }

    Summary summarize(const ScenarioConfig &cfg, std::span<const TrialResult> results)
    {
        const int k_ers = int(cfg.ers.size());
        const std::vector<double> weights = weights_of(cfg);
        Summary s;
        s.trials = int(results.size());
        if (results.empty())
            return s;

        std::vector<double> tau, duty, weighted;
        std::vector<std::vector<double>> power(k_ers);
        double hits = 0.0, attempts = 0.0, sq_err = 0.0, n_err = 0.0;
        for (const auto &r : results)
        {
            tau.push_back(r.tau_used);
            duty.push_back(r.duty_factor);
            weighted.push_back(r.weighted_power(weights));
            for (int k = 0; k < k_ers; ++k)
            {
                power[k].push_back(r.power[k]);
                if (r.vr_hit[k])
                {
                    attempts += 1.0;
                    hits += *r.vr_hit[k] ? 1.0 : 0.0;
                }
                if (!std::isnan(r.pos_error[k]))
                {
                    sq_err += r.pos_error[k] * r.pos_error[k];
                    n_err += 1.0;
                }
            }
        }
        s.tau_mean = mean_of(tau);
        s.duty_factor = mean_of(duty);
        for (int k = 0; k < k_ers; ++k)
        {
            s.power_mean.push_back(mean_of(power[k]));
            s.power_sem.push_back(sem_of(power[k]));
        }
        s.weighted_power_mean = mean_of(weighted);
        s.weighted_power_sem = sem_of(weighted);
        s.vr_hit_rate = attempts > 0.0 ? hits / attempts : nan;
        s.pos_rmse = n_err > 0.0 ? std::sqrt(sq_err / n_err) : nan;
        return s;
    }

    double feasible_gamma_floor(const ScenarioConfig &cfg)
    {
        validate(cfg);
        const ArrayGeometry geom = build_upa(cfg.array.n_y, cfg.array.n_z, cfg.array.carrier_freq);
        const Eigen::VectorXcd probe = uniform_probe(geom, cfg.p_max);
        const int k_ers = int(cfg.ers.size());
        const int tau_max = (cfg.block_len - 1) / k_ers;
        if (tau_max < 1)
            throw InfeasibleBlock("feasible_gamma_floor: block too short for K sensing slots");

        double worst = 0.0;
        for (int i = 0; i < cfg.trials; ++i)
        {
            const Scene scene = draw_scene(cfg, trial_seed(cfg, i));
            for (int k = 0; k < k_ers; ++k)
            {
                const PlanningPrior prior{cfg.ers[k].prior_position, scene.ers[k].vr,
                                          nominal_reflection(cfg.ers[k]), cfg.ers[k].error_bounds};
                worst = std::max(worst, planning_crb(geom, prior, probe, cfg.noise_power, cfg.crb_mode, 1));
            }
        }
        return worst / double(tau_max);
    }

    std::vector<double> default_gamma_grid(const ScenarioConfig &cfg, int n, double decades)
    {
        if (n < 1)
            throw InvalidArgument("default_gamma_grid: need at least one point");
        const double lo = 1.0001 * feasible_gamma_floor(cfg);
        std::vector<double> grid;
        for (int i = 0; i < n; ++i)
            grid.push_back(lo * std::pow(10.0, n == 1 ? 0.0 : decades * double(i) / double(n - 1)));
        return grid;
    }

    std::vector<SweepRow> sweep_gamma(const ScenarioConfig &cfg, std::span<const double> gamma_grid,
                                      Execution execution)
    {
        if (gamma_grid.empty())
            throw InvalidArgument("sweep_gamma: empty grid");
        std::vector<SweepRow> rows;
        for (double g : gamma_grid)
        {
            ScenarioConfig c = cfg;
            c.gamma = g;
            const auto results = run_trials(c, execution);
            rows.push_back({g, c.scheme, summarize(c, results)});
        }
        return rows;
    }

    std::vector<SweepRow> sweep_pmax(const ScenarioConfig &cfg, std::span<const double> pmax_dbm_grid,
                                     std::span<const Scheme> schemes, Execution execution)
    {
        if (pmax_dbm_grid.empty() || schemes.empty())
            throw InvalidArgument("sweep_pmax: empty grid or scheme list");
        std::vector<SweepRow> rows;
        for (double dbm : pmax_dbm_grid)
            for (Scheme scheme : schemes)
            {
                ScenarioConfig c = cfg;
                c.p_max = dbm_to_watts(dbm);
                c.scheme = scheme;
                const auto results = run_trials(c, execution);
                rows.push_back({dbm, scheme, summarize(c, results)});
            }
        return rows;
    }

    std::vector<SweepRow> sweep_beta(const ScenarioConfig &cfg, std::span<const double> beta2_grid,
                                     Execution execution)
    {
        if (cfg.ers.size() != 2)
            throw InvalidArgument("sweep_beta: needs exactly two ERs");
        if (beta2_grid.empty())
            throw InvalidArgument("sweep_beta: empty grid");
        std::vector<SweepRow> rows;
        for (double b2 : beta2_grid)
        {
            if (!(b2 >= 0.0 && b2 <= 1.0))
                throw InvalidArgument("sweep_beta: beta_2 must lie in [0, 1]");
            ScenarioConfig c = cfg;
            c.ers[0].weight = 1.0 - b2;
            c.ers[1].weight = b2;
            const auto results = run_trials(c, execution);
            rows.push_back({b2, c.scheme, summarize(c, results)});
        }
        return rows;
    }

    void write_csv(std::ostream &out, std::span<const SweepRow> rows, int n_ers)
    {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os << "sweep_value,scheme,tau_mean,duty_factor";
        for (int k = 1; k <= n_ers; ++k)
            os << ",power_er" << k << "_watts";
        os << ",vr_hit_rate,pos_rmse_m\n";
        for (const auto &row : rows)
        {
            const Summary &s = row.summary;
            os << fmt(row.sweep_value) << ',' << to_string(row.scheme) << ',' << fmt(s.tau_mean) << ','
               << fmt(s.duty_factor);
            for (int k = 0; k < n_ers; ++k)
                os << ',' << fmt(k < int(s.power_mean.size()) ? s.power_mean[k] : nan);
            os << ',' << fmt(s.vr_hit_rate) << ',' << fmt(s.pos_rmse) << '\n';
        }
        out << os.str();
    }
}
