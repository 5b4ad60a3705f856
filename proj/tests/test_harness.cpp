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
#include "nfwpt/beamforming.hpp"
#include "nfwpt/config.hpp"
#include "nfwpt/errors.hpp"
#include "nfwpt/harness.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <locale>
#include <sstream>
#include <string>

using namespace nfwpt;

namespace
{
    ScenarioConfig small_config(Scheme scheme, int trials = 12)
    {
        ScenarioConfig c = default_scenario();
        c.array = {8, 8, 28e9};
        c.n_alpha = 8;
        c.vr_slack_mean = 8;
        c.trials = trials;
        c.scheme = scheme;
        c.ers[0].prior_position = {0.3, 0.2, 0.3};
        c.ers[1].prior_position = {0.4, -0.2, 0.35};
        for (ErConfig &er : c.ers)
            er.error_bounds = Eigen::Vector3d::Constant(0.05);
        c.gamma = 1e-3;
        return c;
    }

    std::string csv(const std::vector<SweepRow> &rows, int k)
    {
        std::ostringstream out;
        write_csv(out, rows, k);
        return out.str();
    }

    // Comma as the decimal separator
    struct comma_numpunct : std::numpunct<char>
    {
        char do_decimal_point() const override { return ','; }
        char do_thousands_sep() const override { return '.'; }
        std::string do_grouping() const override { return "\3"; }
    };

    void check_same(const TrialResult &a, const TrialResult &b)
    {
        CHECK(a.power == b.power);
        CHECK(a.tau_used == b.tau_used);
        CHECK(a.seed == b.seed);
        CHECK(a.vr_hit == b.vr_hit);
        REQUIRE(a.pos_error.size() == b.pos_error.size());
        for (std::size_t k = 0; k < a.pos_error.size(); ++k)
            CHECK((a.pos_error[k] == b.pos_error[k] || (std::isnan(a.pos_error[k]) && std::isnan(b.pos_error[k]))));
    }
}

TEST_CASE("scene draw respects the prior box and VR rules")
{
    const ScenarioConfig c = default_scenario();
    for (int i = 0; i < 200; ++i)
    {
        const Scene s = draw_scene(c, trial_seed(c, i));
        REQUIRE(s.ers.size() == 2);
        for (std::size_t k = 0; k < 2; ++k)
        {
            const Eigen::Vector3d err = s.ers[k].position - c.ers[k].prior_position;
            CHECK((err.cwiseAbs().array() <= c.ers[k].error_bounds.array()).all());
            CHECK_NOTHROW(check_vr(s.ers[k].vr, 256, 0.25));
            CHECK(s.ers[k].vr.count() <= 256 - 32);
            CHECK(std::abs(s.ers[k].reflection) == doctest::Approx(c.ers[k].reflection_magnitude));
            CHECK(s.ers[k].weight == c.ers[k].weight);
        }
    }
    ScenarioConfig fixed = c;
    fixed.ers[0].vr = VisibilityRegion{3, 200};
    fixed.ers[1].reflection = cdouble(0.0, 5.0);
    const Scene s = draw_scene(fixed, 42);
    CHECK(s.ers[0].vr == VisibilityRegion{3, 200});
    CHECK(s.ers[1].reflection == cdouble(0.0, 5.0));
}

TEST_CASE("trials are deterministic and independent of execution order")
{
    const ScenarioConfig c = small_config(Scheme::proposed);
    const std::vector<TrialResult> par = run_trials(c, Execution::parallel);
    const std::vector<TrialResult> ser = run_trials(c, Execution::serial);
    REQUIRE(par.size() == 12);
    for (int i = 11; i >= 0; --i)
    {
        check_same(par[i], ser[i]);
        check_same(par[i], run_trial(c, i));
    }
}

TEST_CASE("isotropic trial power has the closed form")
{
    const ScenarioConfig c = small_config(Scheme::isotropic, 5);
    const ArrayGeometry g = build_upa(8, 8, 28e9);
    for (int i = 0; i < 5; ++i)
    {
        const TrialResult r = run_trial(c, i);
        const Scene s = draw_scene(c, trial_seed(c, i));
        for (int k = 0; k < 2; ++k)
            CHECK(r.power[k] == doctest::Approx(c.p_max / 64 * channel(g, s.ers[k]).squaredNorm()).epsilon(1e-12));
        CHECK(r.tau_used == 0);
        CHECK(r.duty_factor == 1.0);
    }
}

TEST_CASE("perfect CSI with one ER delivers p_max |h|^2")
{
    ScenarioConfig c = small_config(Scheme::perfect_csi, 4);
    c.ers.resize(1);
    c.ers[0].weight = 1.0;
    const ArrayGeometry g = build_upa(8, 8, 28e9);
    for (int i = 0; i < 4; ++i)
    {
        const TrialResult r = run_trial(c, i);
        const double expected = c.p_max * channel(g, draw_scene(c, trial_seed(c, i)).ers[0]).squaredNorm();
        CHECK(std::abs(r.power[0] - expected) <= 1e-10 * expected);
    }
}

TEST_CASE("perfect CSI bounds the proposed weighted power in every trial")
{
    const ScenarioConfig prop = small_config(Scheme::proposed, 20);
    ScenarioConfig perf = prop;
    perf.scheme = Scheme::perfect_csi;
    const std::vector<double> w{0.1, 0.9};
    for (int i = 0; i < 20; ++i)
    {
        const TrialResult a = run_trial(prop, i), b = run_trial(perf, i);
        CHECK(a.weighted_power(w) <= b.weighted_power(w) * (1 + 1e-12));
        CHECK(a.duty_factor > 0.0);
        CHECK(a.duty_factor <= 1.0);
    }
}

TEST_CASE("equal time uses half the block for sensing")
{
    const TrialResult r = run_trial(small_config(Scheme::equal_time, 1), 0);
    CHECK(r.tau_used == 50);
    CHECK(r.duty_factor == 0.5);
}

TEST_CASE("no-VR scheme does not report VR hits")
{
    const TrialResult r = run_trial(small_config(Scheme::no_vr, 1), 0);
    REQUIRE(r.vr_hit.size() == 2);
    CHECK_FALSE(r.vr_hit[0].has_value());
    CHECK(std::isfinite(r.pos_error[0]));
}

TEST_CASE("summary statistics")
{
    const ScenarioConfig c = small_config(Scheme::proposed, 10);
    const std::vector<TrialResult> rs = run_trials(c);
    const Summary s = summarize(c, rs);
    CHECK(s.trials == 10);
    double mean0 = 0.0, tau = 0.0;
    for (const TrialResult &r : rs)
    {
        mean0 += r.power[0] / 10;
        tau += r.tau_used / 10.0;
    }
    CHECK(s.power_mean[0] == doctest::Approx(mean0).epsilon(1e-12));
    CHECK(s.tau_mean == doctest::Approx(tau).epsilon(1e-12));
    CHECK(s.duty_factor > 0.0);
    CHECK(s.duty_factor <= 1.0);
    CHECK(s.vr_hit_rate >= 0.0);
    CHECK(s.vr_hit_rate <= 1.0);
    CHECK(s.weighted_power_mean == doctest::Approx(0.1 * s.power_mean[0] + 0.9 * s.power_mean[1]).epsilon(1e-12));
}

TEST_CASE("CSV layout")
{
    const ScenarioConfig c = small_config(Scheme::proposed, 3);
    const std::vector<double> grid{2e-3};
    const std::vector<SweepRow> rows = sweep_gamma(c, grid);
    CHECK(rows.size() == 1);
    const std::string text = csv(rows, 2);
    std::istringstream in(text);
    std::string header, line, extra;
    std::getline(in, header);
    std::getline(in, line);
    CHECK_FALSE(std::getline(in, extra));
    CHECK(header == "sweep_value,scheme,tau_mean,duty_factor,power_er1_watts,power_er2_watts,vr_hit_rate,pos_rmse_m");
    CHECK(line.rfind("0.002,proposed,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 7);

    const ScenarioConfig iso = small_config(Scheme::isotropic, 2);
    const std::string iso_text = csv(sweep_gamma(iso, grid), 2);
    CHECK(iso_text.find(",nan,nan") != std::string::npos);
}

TEST_CASE("CSV is locale independent and carries enough digits")
{
    const ScenarioConfig c = small_config(Scheme::perfect_csi, 2);
    const std::vector<double> grid{1.0 / 3.0};
    const std::vector<SweepRow> rows = sweep_gamma(c, grid);
    const std::string plain = csv(rows, 2);

    const std::locale old = std::locale::global(std::locale(std::locale::classic(), new comma_numpunct));
    std::ostringstream out;
    write_csv(out, rows, 2);
    std::locale::global(old);
    CHECK(out.str() == plain);
    CHECK(plain.find("0.333333333333333,") != std::string::npos);

    // every power field round-trips to 12 significant digits
    std::istringstream in(plain);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::vector<std::string> fields;
    std::stringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');)
        fields.push_back(f);
    REQUIRE(fields.size() == 8);
    const double p1 = std::stod(fields[4]);
    CHECK(std::abs(p1 - rows[0].summary.power_mean[0]) <= 1e-12 * rows[0].summary.power_mean[0]);
}

TEST_CASE("identical config and seed give byte-identical CSV")
{
    const ScenarioConfig c = small_config(Scheme::proposed, 6);
    const std::vector<double> grid{1e-3, 1e-2};
    const std::string a = csv(sweep_gamma(c, grid, Execution::parallel), 2);
    const std::string b = csv(sweep_gamma(c, grid, Execution::serial), 2);
    CHECK(a == b);
    ScenarioConfig other = c;
    other.master_seed = 2;
    CHECK(csv(sweep_gamma(other, grid), 2) != a);
}

TEST_CASE("tau is non-increasing along a gamma sweep")
{
    const ScenarioConfig c = small_config(Scheme::proposed, 6);
    const std::vector<double> grid = default_gamma_grid(c, 6, 3.0);
    const std::vector<SweepRow> rows = sweep_gamma(c, grid);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].summary.tau_mean <= rows[i - 1].summary.tau_mean);
    CHECK(rows.back().summary.tau_mean == 1.0);
}

TEST_CASE("weight sweep edge cases")
{
    const ScenarioConfig c = small_config(Scheme::perfect_csi, 3);
    const std::vector<double> grid{0.0};
    const std::vector<SweepRow> rows = sweep_beta(c, grid);
    const ArrayGeometry g = build_upa(8, 8, 28e9);
    double er1_opt = 0.0;
    for (int i = 0; i < 3; ++i)
        er1_opt += c.p_max * channel(g, draw_scene(c, trial_seed(c, i)).ers[0]).squaredNorm() / 3;
    CHECK(rows[0].summary.power_mean[0] == doctest::Approx(er1_opt).epsilon(1e-10));

    ScenarioConfig three = c;
    three.ers.push_back(three.ers[0]);
    CHECK_THROWS_AS(sweep_beta(three, grid), InvalidArgument);
    const std::vector<double> bad{1.5};
    CHECK_THROWS_AS(sweep_beta(c, bad), InvalidArgument);
}

TEST_CASE("power sweep covers each scheme at each point")
{
    const ScenarioConfig c = small_config(Scheme::proposed, 2);
    const std::vector<double> dbm{20, 30};
    const std::vector<Scheme> schemes{Scheme::proposed, Scheme::isotropic};
    const std::vector<SweepRow> rows = sweep_pmax(c, dbm, schemes);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].sweep_value == 20);
    CHECK(rows[1].scheme == Scheme::isotropic);
    CHECK(rows[3].summary.power_mean[0] == doctest::Approx(10 * rows[1].summary.power_mean[0]).epsilon(1e-9));
}

TEST_CASE("infeasible threshold propagates")
{
    const ScenarioConfig c = small_config(Scheme::proposed, 2);
    const std::vector<double> grid{1e-9};
    CHECK_THROWS_AS(sweep_gamma(c, grid), InfeasibleBlock);
}
