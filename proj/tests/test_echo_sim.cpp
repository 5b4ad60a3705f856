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
#include "nfwpt/rng.hpp"

#include "doctest.h"

using namespace nfwpt;

TEST_CASE("uniform probe")
{
    const ArrayGeometry g = build_upa(16, 16, 28e9);
    const Eigen::VectorXcd x = uniform_probe(g, 1.0);
    CHECK(x.size() == 256);
    for (int n = 0; n < 256; ++n)
        CHECK(x(n) == cdouble(1.0 / 16, 0.0));
    CHECK(uniform_probe(build_upa(7, 3, 28e9), 2.5).squaredNorm() == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(uniform_probe(build_upa(1, 1, 28e9), 4.0)(0) == cdouble(2.0, 0.0));
    CHECK_THROWS_AS(uniform_probe(g, 0.0), InvalidArgument);
}

TEST_CASE("noiseless echo is b h (h^T x)")
{
    const ArrayGeometry g = build_upa(16, 16, 28e9);
    const ChannelVector h = channel(g, {1, 2, 3}, {40, 170});
    const Eigen::VectorXcd x = uniform_probe(g, 1.0);
    const cdouble b(120.0, -45.0);
    Rng rng(1);
    const EchoBatch e1 = simulate_echo(h, b, x, 1, 0.0, rng);
    const Eigen::VectorXcd expected = b * h * (h.transpose() * x)(0);
    CHECK(e1.samples.cols() == 1);
    CHECK((e1.samples.col(0) - expected).norm() <= 1e-15 * expected.norm());
    CHECK(aggregate(e1) == e1.samples.col(0));

    const EchoBatch e10 = simulate_echo(h, b, x, 10, 0.0, rng);
    const Eigen::VectorXcd sum = aggregate(e10);
    CHECK((sum - 10.0 * e1.samples.col(0)).norm() <= 1e-14 * sum.norm());
}

TEST_CASE("zero reflection leaves pure noise of the configured power")
{
    const ArrayGeometry g = build_upa(8, 8, 28e9);
    const ChannelVector h = steering_vector(g, {1, 1, 1});
    Rng rng(5);
    const double sigma2 = 3e-12;
    const EchoBatch e = simulate_echo(h, 0.0, uniform_probe(g, 1.0), 4000, sigma2, rng);
    const double mean_power = e.samples.cwiseAbs2().mean();
    CHECK(mean_power == doctest::Approx(sigma2).epsilon(0.01));
    // real and imaginary parts each carry half the power
    CHECK(e.samples.real().array().square().mean() == doctest::Approx(sigma2 / 2).epsilon(0.02));
    CHECK(std::abs(e.samples.mean()) < 0.01 * std::sqrt(sigma2));
}

TEST_CASE("same seed gives a bit-identical batch")
{
    const ArrayGeometry g = build_upa(8, 8, 28e9);
    const ChannelVector h = steering_vector(g, {1, 1, 1});
    Rng r1(derive_seed(99, 3)), r2(derive_seed(99, 3)), r3(derive_seed(99, 4));
    const EchoBatch a = simulate_echo(h, 2.0, uniform_probe(g, 1.0), 7, 1e-10, r1);
    const EchoBatch b = simulate_echo(h, 2.0, uniform_probe(g, 1.0), 7, 1e-10, r2);
    const EchoBatch c = simulate_echo(h, 2.0, uniform_probe(g, 1.0), 7, 1e-10, r3);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
}

TEST_CASE("aggregate is the column sum, bit-exact")
{
    const ArrayGeometry g = build_upa(8, 8, 28e9);
    Rng rng(17);
    const EchoBatch e = simulate_echo(steering_vector(g, {1, 1, 1}), 3.0, uniform_probe(g, 1.0), 13, 1e-9, rng);
    const Eigen::VectorXcd s = aggregate(e);
    for (int n = 0; n < 64; ++n)
    {
        cdouble acc(0.0, 0.0);
        for (int t = 0; t < 13; ++t)
            acc += e.samples(n, t);
        CHECK(s(n) == acc);
    }
}

TEST_CASE("echo argument checks")
{
    const ArrayGeometry g = build_upa(4, 4, 28e9);
    const ChannelVector h = steering_vector(g, {1, 1, 1});
    Rng rng(1);
    CHECK_THROWS_AS(simulate_echo(h, 1.0, uniform_probe(g, 1.0), 0, 1e-9, rng), InvalidArgument);
    CHECK_THROWS_AS(simulate_echo(h, 1.0, uniform_probe(g, 1.0), 1, -1.0, rng), InvalidArgument);
    CHECK_THROWS_AS(simulate_echo(h, 1.0, Eigen::VectorXcd::Ones(3), 1, 1e-9, rng), InvalidArgument);
}
