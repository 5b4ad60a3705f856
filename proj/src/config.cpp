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

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace nfwpt
{
    namespace
    {
        [[noreturn]] void fail(const std::string &what) { throw InvalidArgument("config: " + what); }

        void expect_object(const json &j, const std::string &where)
        {
            if (!j.is_object())
                fail(where + " must be an object");
        }

        double get_number(const json &j, const std::string &key)
        {
            if (!j.is_number())
                fail("'" + key + "' must be a number");
            return j.get<double>();
        }

        int get_int(const json &j, const std::string &key)
        {
            if (!j.is_number_integer())
                fail("'" + key + "' must be an integer");
            return j.get<int>();
        }

        Eigen::Vector3d get_vec3(const json &j, const std::string &key)
        {
            if (!j.is_array() || j.size() != 3)
                fail("'" + key + "' must be an array of 3 numbers");
            Eigen::Vector3d v;
            for (int i = 0; i < 3; ++i)
                v[i] = get_number(j[i], key);
            return v;
        }

        ArrayConfig parse_array(const json &j)
        {
            expect_object(j, "'array'");
            ArrayConfig a;
            for (const auto &[key, val] : j.items())
            {
                if (key == "n_y")
                    a.n_y = get_int(val, key);
                else if (key == "n_z")
                    a.n_z = get_int(val, key);
                else if (key == "carrier_freq")
                    a.carrier_freq = get_number(val, key);
                else
                    fail("unknown key 'array." + key + "'");
            }
            return a;
        }

        ErConfig parse_er(const json &j)
        {
            expect_object(j, "each entry of 'ers'");
            ErConfig er;
            for (const auto &[key, val] : j.items())
            {
                if (key == "prior_position")
                    er.prior_position = get_vec3(val, key);
                else if (key == "error_bounds")
                    er.error_bounds = get_vec3(val, key);
                else if (key == "weight")
                    er.weight = get_number(val, key);
                else if (key == "reflection")
                {
                    if (val.is_number())
                        er.reflection_magnitude = val.get<double>();
                    else if (val.is_array() && val.size() == 2)
                        er.reflection = cdouble(get_number(val[0], key), get_number(val[1], key));
                    else
                        fail("'reflection' must be a magnitude or a [re, im] pair");
                }
                else if (key == "vr")
                {
                    if (!val.is_array() || val.size() != 2)
                        fail("'vr' must be a [start, end] pair");
                    er.vr = VisibilityRegion{get_int(val[0], key), get_int(val[1], key)};
                }
                else
                    fail("unknown key 'ers[]." + key + "'");
            }
            return er;
        }

        json vec_json(const Eigen::Vector3d &v) { return json::array({v[0], v[1], v[2]}); }
    }

    std::string_view to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::proposed:
            return "proposed";
        case Scheme::perfect_csi:
            return "perfect_csi";
        case Scheme::isotropic:
            return "isotropic";
        case Scheme::equal_time:
            return "equal_time";
        case Scheme::no_vr:
            return "no_vr";
        }
        return "?";
    }

    Scheme parse_scheme(std::string_view name)
    {
        for (Scheme s : {Scheme::proposed, Scheme::perfect_csi, Scheme::isotropic, Scheme::equal_time, Scheme::no_vr})
            if (to_string(s) == name)
                return s;
        throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
    }

    std::string_view to_string(CrbMode m) { return m == CrbMode::nominal ? "nominal" : "worst_case"; }

    CrbMode parse_crb_mode(std::string_view name)
    {
        if (name == "worst_case")
            return CrbMode::worst_case;
        if (name == "nominal")
            return CrbMode::nominal;
        throw InvalidArgument("unknown crb_mode '" + std::string(name) + "'");
    }

    double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
    double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }

    void validate(const ScenarioConfig &cfg)
    {
        if (cfg.array.n_y < 1 || cfg.array.n_z < 1 || !(cfg.array.carrier_freq > 0.0))
            fail("array dimensions and carrier frequency must be positive");
        if (!(cfg.noise_power > 0.0))
            fail("noise_power must be positive");
        if (!(cfg.p_max > 0.0))
            fail("p_max must be positive");
        if (cfg.block_len < 1)
            fail("block_len must be >= 1");
        if (cfg.trials < 1)
            fail("trials must be >= 1");
        if (cfg.ers.empty())
            fail("need at least one ER");
        if (!(cfg.eta > 0.0 && cfg.eta < 1.0))
            fail("eta must lie in (0, 1)");
        const int n = cfg.n_elements();
        if (cfg.n_alpha < 1 || 2 * cfg.n_alpha > n)
            fail("n_alpha must lie in 1..N/2");
        if (!(cfg.gamma > 0.0))
            fail("gamma must be positive");
        if (!(cfg.vr_slack_mean >= 0.0))
            fail("vr_slack_mean must be non-negative");
        if (cfg.coarse_grid < 2)
            fail("coarse_grid must be >= 2");
        if (!(cfg.localization_tol > 0.0) || cfg.localization_max_iters < 1)
            fail("localization_tol must be positive and localization_max_iters >= 1");
        if (cfg.search_margin && (cfg.search_margin->array() < 0.0).any())
            fail("search_margin must be non-negative");
        if (n - min_vr_span(cfg.eta, n) < 1)
            fail("eta too large: no visibility region fits");
        for (const auto &er : cfg.ers)
        {
            if (!(er.weight >= 0.0))
                fail("ER weights must be non-negative");
            if ((er.error_bounds.array() < 0.0).any())
                fail("error_bounds must be non-negative");
            if (!(er.reflection_magnitude >= 0.0))
                fail("reflection magnitude must be non-negative");
            if (er.vr)
                check_vr(*er.vr, n, cfg.eta);
        }
    }

    ScenarioConfig default_scenario()
    {
        ScenarioConfig cfg;
        ErConfig er1;
        er1.prior_position = {1.0, 2.0, 3.0};
        er1.weight = 0.1;
        ErConfig er2;
        er2.prior_position = {1.5, 3.0, 4.5};
        er2.weight = 0.9;
        cfg.ers = {er1, er2};
        return cfg;
    }

    ScenarioConfig parse_config(std::string_view json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            fail(std::string("malformed JSON: ") + e.what());
        }
        expect_object(j, "top level");

        ScenarioConfig cfg = default_scenario();
        for (const auto &[key, val] : j.items())
        {
            if (key == "array")
                cfg.array = parse_array(val);
            else if (key == "noise_power")
                cfg.noise_power = get_number(val, key);
            else if (key == "p_max")
                cfg.p_max = get_number(val, key);
            else if (key == "block_len")
                cfg.block_len = get_int(val, key);
            else if (key == "ers")
            {
                if (!val.is_array())
                    fail("'ers' must be an array");
                cfg.ers.clear();
                for (const auto &e : val)
                    cfg.ers.push_back(parse_er(e));
            }
            else if (key == "eta")
                cfg.eta = get_number(val, key);
            else if (key == "n_alpha")
                cfg.n_alpha = get_int(val, key);
            else if (key == "gamma")
                cfg.gamma = get_number(val, key);
            else if (key == "trials")
                cfg.trials = get_int(val, key);
            else if (key == "master_seed")
            {
                if (!val.is_number_unsigned())
                    fail("'master_seed' must be a non-negative integer");
                cfg.master_seed = val.get<std::uint64_t>();
            }
            else if (key == "scheme")
            {
                if (!val.is_string())
                    fail("'scheme' must be a string");
                cfg.scheme = parse_scheme(val.get<std::string>());
            }
            else if (key == "crb_mode")
            {
                if (!val.is_string())
                    fail("'crb_mode' must be a string");
                cfg.crb_mode = parse_crb_mode(val.get<std::string>());
            }
            else if (key == "vr_slack_mean")
                cfg.vr_slack_mean = get_number(val, key);
            else if (key == "search_margin")
                cfg.search_margin = get_vec3(val, key);
            else if (key == "coarse_grid")
                cfg.coarse_grid = get_int(val, key);
            else if (key == "localization_tol")
                cfg.localization_tol = get_number(val, key);
            else if (key == "localization_max_iters")
                cfg.localization_max_iters = get_int(val, key);
            else
                fail("unknown key '" + key + "'");
        }
        validate(cfg);
        return cfg;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            fail("cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    std::string dump_config(const ScenarioConfig &cfg)
    {
        json j;
        j["array"] = {{"n_y", cfg.array.n_y}, {"n_z", cfg.array.n_z}, {"carrier_freq", cfg.array.carrier_freq}};
        j["noise_power"] = cfg.noise_power;
        j["p_max"] = cfg.p_max;
        j["block_len"] = cfg.block_len;
        json ers = json::array();
        for (const auto &er : cfg.ers)
        {
            json e;
            e["prior_position"] = vec_json(er.prior_position);
            e["error_bounds"] = vec_json(er.error_bounds);
            e["weight"] = er.weight;
            if (er.reflection)
                e["reflection"] = json::array({er.reflection->real(), er.reflection->imag()});
            else
                e["reflection"] = er.reflection_magnitude;
            if (er.vr)
                e["vr"] = json::array({er.vr->start, er.vr->end});
            ers.push_back(e);
        }
        j["ers"] = ers;
        j["eta"] = cfg.eta;
        j["n_alpha"] = cfg.n_alpha;
        j["gamma"] = cfg.gamma;
        j["trials"] = cfg.trials;
        j["master_seed"] = cfg.master_seed;
        j["scheme"] = std::string(to_string(cfg.scheme));
        j["crb_mode"] = std::string(to_string(cfg.crb_mode));
        j["vr_slack_mean"] = cfg.vr_slack_mean;
        if (cfg.search_margin)
            j["search_margin"] = vec_json(*cfg.search_margin);
        j["coarse_grid"] = cfg.coarse_grid;
        j["localization_tol"] = cfg.localization_tol;
        j["localization_max_iters"] = cfg.localization_max_iters;
        return j.dump(2);
    }
}
