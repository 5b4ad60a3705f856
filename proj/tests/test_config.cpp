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

#include "nfwpt/config.hpp"
#include "nfwpt/errors.hpp"

#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

using namespace nfwpt;

TEST_CASE("default scenario")
{
    const ScenarioConfig c = default_scenario();
    CHECK(c.n_elements() == 256);
    CHECK(c.array.carrier_freq == 28e9);
    CHECK(watts_to_dbm(c.noise_power) == doctest::Approx(-120.0));
    CHECK(watts_to_dbm(c.p_max) == doctest::Approx(30.0));
    CHECK(c.block_len == 200);
    CHECK(c.eta == 0.25);
    CHECK(c.n_alpha == 32);
    REQUIRE(c.ers.size() == 2);
    CHECK(c.ers[0].prior_position == Eigen::Vector3d(1, 2, 3));
    CHECK(c.ers[1].prior_position == Eigen::Vector3d(1.5, 3, 4.5));
    CHECK(c.ers[0].weight == 0.1);
    CHECK(c.ers[1].weight == 0.9);
    CHECK(c.ers[0].error_bounds == Eigen::Vector3d::Constant(0.15));
    CHECK(c.scheme == Scheme::proposed);
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("dBm conversion")
{
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(-120.0) == doctest::Approx(1e-15));
    CHECK(watts_to_dbm(dbm_to_watts(23.7)) == doctest::Approx(23.7));
}

TEST_CASE("scheme names")
{
    for (Scheme s : {Scheme::proposed, Scheme::perfect_csi, Scheme::isotropic, Scheme::equal_time, Scheme::no_vr})
        CHECK(parse_scheme(to_string(s)) == s);
    CHECK_THROWS_AS(parse_scheme("optimal"), InvalidArgument);
    CHECK(parse_crb_mode("nominal") == CrbMode::nominal);
    CHECK_THROWS_AS(parse_crb_mode("best"), InvalidArgument);
}

TEST_CASE("parse overrides defaults and keeps the rest")
{
    const ScenarioConfig c = parse_config(R"({
        "noise_power": 1e-13,
        "trials": 7,
        "master_seed": 18446744073709551615,
        "scheme": "no_vr",
        "ers": [
            {"prior_position": [1, 1, 2], "weight": 1.0, "reflection": [3.0, -4.0], "vr": [10, 120]}
        ]
    })");
    CHECK(c.noise_power == 1e-13);
    CHECK(c.trials == 7);
    CHECK(c.master_seed == 18446744073709551615ULL);
    CHECK(c.scheme == Scheme::no_vr);
    CHECK(c.block_len == 200);
    REQUIRE(c.ers.size() == 1);
    REQUIRE(c.ers[0].reflection.has_value());
    CHECK(*c.ers[0].reflection == cdouble(3.0, -4.0));
    REQUIRE(c.ers[0].vr.has_value());
    CHECK(c.ers[0].vr->start == 10);
    CHECK(c.ers[0].vr->end == 120);
}

TEST_CASE("strict parsing")
{
    CHECK_THROWS_AS(parse_config(R"({"noise_powr": 1e-15})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"array": {"n_y": 4, "n_x": 4}})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"ers": [{"position": [1, 2, 3]}]})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"trials": 2.5})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"trials": "ten"})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"ers": [{"prior_position": [1, 2]}]})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"trials": 0})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"gamma": -1})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"ers": [{"weight": -0.5}]})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"ers": [{"vr": [10, 20]}]})"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"([1, 2])"), InvalidArgument);
    CHECK_THROWS_AS(parse_config("{"), InvalidArgument);
    CHECK_THROWS_AS(parse_config(R"({"scheme": "best"})"), InvalidArgument);
}

TEST_CASE("dump and parse round trip")
{
    ScenarioConfig c = default_scenario();
    c.gamma = 123.5;
    c.ers[1].reflection = cdouble(1.0, 2.0);
    c.ers[0].vr = VisibilityRegion{5, 90};
    c.search_margin = Eigen::Vector3d::Constant(0.05);
    const ScenarioConfig back = parse_config(dump_config(c));
    CHECK(dump_config(back) == dump_config(c));
    CHECK(back.gamma == 123.5);
    CHECK(*back.ers[1].reflection == cdouble(1.0, 2.0));
    CHECK(back.ers[0].vr->end == 90);
}

TEST_CASE("load from file")
{
    const std::string path = "nfwpt_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"block_len": 300})";
    }
    CHECK(load_config(path).block_len == 300);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("does/not/exist.json"), InvalidArgument);
}
