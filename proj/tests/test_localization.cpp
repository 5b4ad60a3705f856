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
#include "nfwpt/channel_model.hpp"
#include "nfwpt/echo_sim.hpp"
#include "nfwpt/errors.hpp"
#include "nfwpt/localization.hpp"
#include "nfwpt/rng.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace nfwpt;

namespace
{
    struct Fixture
    {
        ArrayGeometry geom = build_upa(16, 16, 28e9);
        Eigen::VectorXcd probe = uniform_probe(geom, 1.0);

        Eigen::VectorXcd echo(const Eigen::Vector3d &l, VisibilityRegion vr, cdouble b, int tau, double sigma2,
                              std::uint64_t seed = 0) const
        {
            Rng rng(seed);
            return aggregate(simulate_echo(channel(geom, l, vr), b, probe, tau, sigma2, rng));
        }
    };

    const Eigen::Vector3d half_box(0.3, 0.3, 0.3);
}

TEST_CASE_FIXTURE(Fixture, "objective peaks at the true position with value |y|^2")
{
    const Eigen::Vector3d l(1, 2, 3);
    const VisibilityRegion vr{30, 160};
    const Eigen::VectorXcd y = echo(l, vr, cdouble(200, 100), 3, 0.0);
    const double peak = concentrated_objective(geom, y, l, vr);
    CHECK(peak == doctest::Approx(y.squaredNorm()).epsilon(1e-12));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int t = 0; t < 1000; ++t)
    {
        const Eigen::Vector3d c = l + Eigen::Vector3d(u(rng), u(rng), u(rng));
        CHECK(concentrated_objective(geom, y, c, vr) <= peak * (1 + 1e-12));
    }
}

TEST_CASE_FIXTURE(Fixture, "objective against a direct evaluation")
{
    const oracle::Array a = oracle::half_wave_upa(16, 16, 28e9);
    std::mt19937_64 rng(2);
    const Eigen::VectorXcd y = oracle::randn(rng, 256, 1);
    const Eigen::Vector3d c(1.1, 1.9, 3.2);
    const Eigen::VectorXcd h = oracle::channel(a, c.x(), c.y(), c.z(), 10, 200);
    const double direct = std::norm(h.dot(y)) / h.squaredNorm();
    CHECK(concentrated_objective(geom, y, c, {10, 200}) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE_FIXTURE(Fixture, "zero echo gives zero objective and zero b")
{
    const Eigen::VectorXcd y = Eigen::VectorXcd::Zero(256);
    CHECK(concentrated_objective(geom, y, {1, 2, 3}, {1, 256}) == 0.0);
    CHECK(estimate_b(geom, y, {1, 2, 3}, {1, 256}, probe, 4) == cdouble(0.0, 0.0));
}

TEST_CASE_FIXTURE(Fixture, "noiseless b estimate is exact and the estimator is linear")
{
    const Eigen::Vector3d l(1.5, 3, 4.5);
    const VisibilityRegion vr{100, 220};
    const cdouble b(-150, 260);
    const Eigen::VectorXcd y = echo(l, vr, b, 7, 0.0);
    const cdouble b_hat = estimate_b(geom, y, l, vr, probe, 7);
    CHECK(std::abs(b_hat - b) < 1e-12 * std::abs(b));

    std::mt19937_64 rng(3);
    const Eigen::VectorXcd y1 = oracle::randn(rng, 256, 1), y2 = oracle::randn(rng, 256, 1);
    const cdouble sum = estimate_b(geom, y1 + y2, l, vr, probe, 2);
    const cdouble parts = estimate_b(geom, y1, l, vr, probe, 2) + estimate_b(geom, y2, l, vr, probe, 2);
    CHECK(std::abs(sum - parts) < 1e-12 * std::abs(sum));
}

TEST_CASE_FIXTURE(Fixture, "degenerate box returns its single point")
{
    const Eigen::Vector3d l(1, 2, 3);
    const VisibilityRegion vr{1, 256};
    const Eigen::VectorXcd y = echo(l, vr, 300.0, 1, 1e-15, 4);
    const LocalizationResult r = locate_3d_aco(geom, y, vr, SearchBox{l, l}, probe, 1);
    CHECK(r.position == l);
}

TEST_CASE_FIXTURE(Fixture, "coarse grid: serial and parallel agree exactly")
{
    const Eigen::Vector3d l(1.05, 1.97, 3.02);
    const VisibilityRegion vr{20, 200};
    const Eigen::VectorXcd y = echo(l, vr, 300.0, 2, 1e-15, 5);
    const SearchBox box = SearchBox::around({1, 2, 3}, half_box);
    const GridPoint s = coarse_grid_search(geom, y, vr, box, {9, 9, 9}, Execution::serial);
    const GridPoint p = coarse_grid_search(geom, y, vr, box, {9, 9, 9}, Execution::parallel);
    CHECK(s.position == p.position);
    CHECK(s.objective == p.objective);
    CHECK(box.contains(s.position));
    CHECK_THROWS_AS(coarse_grid_search(geom, y, vr, box, {1, 9, 9}), InvalidArgument);
}

TEST_CASE_FIXTURE(Fixture, "coarse grid picks the best lattice point")
{
    const VisibilityRegion vr{20, 200};
    const Eigen::VectorXcd y = echo({1.1, 2.1, 2.9}, vr, 300.0, 1, 0.0);
    const SearchBox box = SearchBox::around({1, 2, 3}, half_box);
    const GridPoint best = coarse_grid_search(geom, y, vr, box, {4, 3, 5}, Execution::serial);
    double brute = -1.0;
    for (int k = 0; k < 5; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 4; ++i)
            {
                const Eigen::Vector3d c = box.lo + Eigen::Vector3d(i / 3.0, j / 2.0, k / 4.0).cwiseProduct(box.hi - box.lo);
                brute = std::max(brute, concentrated_objective(geom, y, c, vr));
            }
    CHECK(best.objective == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE_FIXTURE(Fixture, "noiseless localization recovers the position")
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-0.15, 0.15);
    for (const Eigen::Vector3d &prior : {Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(1.5, 3, 4.5)})
        for (int t = 0; t < 5; ++t)
        {
            const Eigen::Vector3d l = prior + Eigen::Vector3d(u(rng), u(rng), u(rng));
            const int s = std::uniform_int_distribution<int>(1, 150)(rng);
            const VisibilityRegion vr{s, s + 90};
            const cdouble b = std::polar(331.0, 0.3 * t);
            const Eigen::VectorXcd y = echo(l, vr, b, 1, 0.0);
            const LocalizationResult r =
                locate_3d_aco(geom, y, vr, SearchBox::around(prior, half_box), probe, 1);
            CHECK((r.position - l).norm() < 1e-4);
            CHECK(std::abs(r.b_hat - b) < 1e-2 * std::abs(b));
            CHECK(r.converged);
            for (std::size_t i = 1; i < r.trace.size(); ++i)
                CHECK(r.trace[i] >= r.trace[i - 1]);
        }
}

TEST_CASE_FIXTURE(Fixture, "serial and parallel localization agree exactly")
{
    const VisibilityRegion vr{60, 190};
    const Eigen::VectorXcd y = echo({0.95, 2.1, 3.05}, vr, 331.0, 2, 1e-15, 9);
    const SearchBox box = SearchBox::around({1, 2, 3}, half_box);
    LocalizationOptions so, po;
    so.execution = Execution::serial;
    po.execution = Execution::parallel;
    const LocalizationResult a = locate_3d_aco(geom, y, vr, box, probe, 2, so);
    const LocalizationResult b = locate_3d_aco(geom, y, vr, box, probe, 2, po);
    CHECK(a.position == b.position);
    CHECK(a.b_hat == b.b_hat);
    CHECK(a.trace == b.trace);
}

TEST_CASE_FIXTURE(Fixture, "estimate stays inside the search box")
{
    const VisibilityRegion vr{60, 190};
    const SearchBox box = SearchBox::around({1, 2, 3}, Eigen::Vector3d(0.05, 0.05, 0.05));
    const Eigen::VectorXcd y = echo({1.2, 2.2, 3.2}, vr, 331.0, 1, 1e-15, 10);
    CHECK(box.contains(locate_3d_aco(geom, y, vr, box, probe, 1).position));
}

TEST_CASE_FIXTURE(Fixture, "invalid options")
{
    const Eigen::VectorXcd y = Eigen::VectorXcd::Ones(256);
    LocalizationOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(locate_3d_aco(geom, y, {1, 256}, SearchBox::around({1, 2, 3}, half_box), probe, 1, bad),
                    InvalidArgument);
    CHECK_THROWS_AS(concentrated_objective(geom, Eigen::VectorXcd::Ones(3), {1, 2, 3}, {1, 256}), InvalidArgument);
}
