// Copyright 2026 The mmes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "mmes/errors.hpp"
#include "mmes/gradients.hpp"
#include "mmes/optimize.hpp"
#include "oracles.hpp"

using namespace mmes;

TEST_CASE("phase gradient matches the term-by-term sine sum") {
    Rng rng(31);
    for (int n = 2; n <= 5; ++n) {
        const Parametrization param{ParamKind::Phases, n};
        const auto phi = oracle::random_phases(n, rng);
        const auto g = grad_potential(phi, param, 0.0);
        const auto ref = oracle::phase_gradient(phi, n);
        for (std::size_t k = 0; k < phi.size(); ++k) {
            CHECK(std::abs(g[k] - ref[k]) < 1e-13);
        }
    }
}

TEST_CASE("analytic gradients agree with central differences") {
    Rng rng(32);
    for (int n = 3; n <= 5; ++n) {
        for (auto kind : {ParamKind::Phases, ParamKind::FullComplex}) {
            const Parametrization param{kind, n};
            for (int trial = 0; trial < 3; ++trial) {
                const auto x = initial_params(param, rng.below(1U << 30));
                CHECK(fd_check(x, param, 0.0) < 1e-6);
                CHECK(fd_check(x, param, 0.7) < 1e-6);
            }
        }
    }
}

TEST_CASE("gauge invariance of the phase objective") {
    Rng rng(33);
    for (int n = 3; n <= 6; ++n) {
        const Parametrization param{ParamKind::Phases, n};
        auto phi = oracle::random_phases(n, rng);
        const double before = potential_me(decode(phi, param)).pi_me;
        const auto g = grad_potential(phi, param, 0.5);
        CHECK(std::abs(std::accumulate(g.begin(), g.end(), 0.0)) < 1e-10);
        const double c = rng.uniform(-3.0, 3.0);
        for (auto &p : phi) {
            p += c;
        }
        CHECK(std::abs(potential_me(decode(phi, param)).pi_me - before) < 1e-12);
    }
}

TEST_CASE("full-complex gradient is tangent to the sphere") {
    Rng rng(34);
    for (int n = 2; n <= 6; ++n) {
        const Parametrization param{ParamKind::FullComplex, n};
        const auto x = initial_params(param, rng.below(1U << 30));
        const auto g = grad_potential(x, param, 0.3);
        const double radial = std::inner_product(x.begin(), x.end(), g.begin(), 0.0);
        CHECK(std::abs(radial) < 1e-12);
    }
}

TEST_CASE("product and perfect states are stationary") {
    const Parametrization param{ParamKind::Phases, 4};
    const std::vector<double> zero(16, 0.0);
    for (double v : grad_potential(zero, param, 0.0)) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("encode and decode round trip") {
    Rng rng(35);
    for (auto kind : {ParamKind::Phases, ParamKind::FullComplex}) {
        const Parametrization param{kind, 3};
        const auto x = initial_params(param, 99);
        const PureState s = decode(x, param);
        const PureState t = decode(encode(s, param), param);
        for (Index k = 0; k < s.dim(); ++k) {
            const Complex ratio = t[k] / s[k];
            CHECK(std::abs(ratio - t[0] / s[0]) < 1e-12);
        }
    }
    CHECK(parse_param_kind("phases-only") == ParamKind::Phases);
    CHECK_THROWS_AS(parse_param_kind("polar"), Error);
    CHECK_THROWS_AS(fd_check(std::vector<double>(8, 0.0), Parametrization{ParamKind::Phases, 3}, 0.0, 1.0), Error);
}
