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

// Serial vs OpenMP timings for the coarse localization grid and a trial batch.
//
//   bench_kernels [--grid N] [--trials N] [--reps N]

#include "nfwpt/array_geometry.hpp"
#include "nfwpt/channel_model.hpp"
#include "nfwpt/config.hpp"
#include "nfwpt/echo_sim.hpp"
#include "nfwpt/harness.hpp"
#include "nfwpt/localization.hpp"
#include "nfwpt/rng.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace nfwpt;

namespace
{
    double best_of(int reps, const std::function<void()> &f)
    {
        double best = 1e300;
        for (int r = 0; r < reps; ++r)
        {
            const auto t0 = std::chrono::steady_clock::now();
            f();
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        return best;
    }

    void report(const char *name, double serial, double parallel, bool same)
    {
        std::printf("%-22s serial %9.4f s   parallel %9.4f s   speedup %5.2fx   results %s\n", name, serial,
                    parallel, serial / parallel, same ? "identical" : "DIFFER");
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"nfwpt kernel benchmark"};
    int grid = 17, trials = 32, reps = 3;
    app.add_option("--grid", grid, "coarse lattice points per axis")->check(CLI::Range(2, 101));
    app.add_option("--trials", trials, "trials in the batch")->check(CLI::PositiveNumber);
    app.add_option("--reps", reps, "repetitions, best time is reported")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::printf("OpenMP threads: %d\n", omp_get_max_threads());

    const ScenarioConfig cfg = default_scenario();
    const ArrayGeometry g = build_upa(cfg.array.n_y, cfg.array.n_z, cfg.array.carrier_freq);
    const Eigen::VectorXcd x = uniform_probe(g, cfg.p_max);
    const Scene scene = draw_scene(cfg, cfg.master_seed);
    const ErState &er = scene.ers[0];
    Rng rng(cfg.master_seed);
    const Eigen::VectorXcd y = aggregate(simulate_echo(channel(g, er), er.reflection, x, 1, cfg.noise_power, rng));
    const SearchBox box = SearchBox::around(cfg.ers[0].prior_position, 2.0 * cfg.ers[0].error_bounds);
    const std::array<int, 3> lattice{grid, grid, grid};

    GridPoint gs, gp;
    const double ts = best_of(reps, [&] { gs = coarse_grid_search(g, y, er.vr, box, lattice, Execution::serial); });
    const double tp = best_of(reps, [&] { gp = coarse_grid_search(g, y, er.vr, box, lattice, Execution::parallel); });
    report("coarse grid search", ts, tp, gs.position == gp.position && gs.objective == gp.objective);

    ScenarioConfig batch = cfg;
    batch.trials = trials;
    std::vector<TrialResult> rs, rp;
    const double bs = best_of(reps, [&] { rs = run_trials(batch, Execution::serial); });
    const double bp = best_of(reps, [&] { rp = run_trials(batch, Execution::parallel); });
    bool same = rs.size() == rp.size();
    for (std::size_t i = 0; same && i < rs.size(); ++i)
        same = rs[i].power == rp[i].power && rs[i].tau_used == rp[i].tau_used;
    report("trial batch", bs, bp, same);
    return 0;
}
