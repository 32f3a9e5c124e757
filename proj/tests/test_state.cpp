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

#include "mmes/errors.hpp"
#include "mmes/state.hpp"
#include "oracles.hpp"

using namespace mmes;

namespace {

PureState to_state(int n, const oracle::Amps &z) { return PureState(n, std::vector<Complex>(z.begin(), z.end())); }

} // namespace

TEST_CASE("balanced enumeration order and counts") {
    CHECK(enumerate_balanced(2).size() == 2);
    CHECK(enumerate_balanced(5).size() == 10);
    CHECK(enumerate_balanced(6).size() == 20);
    CHECK(enumerate_balanced(6, true).size() == 10);
    for (int n = 2; n <= 10; ++n) {
        const auto bps = enumerate_balanced(n);
        for (std::size_t i = 1; i < bps.size(); ++i) {
            CHECK(bps[i - 1].mask() < bps[i].mask());
        }
        for (const auto &bp : bps) {
            CHECK(bp.size_a() == n / 2);
        }
        // canonical mode drops complements, which only exist among balanced sets for even n
        const auto canon = enumerate_balanced(n, true);
        CHECK(canon.size() == (n % 2 == 0 ? bps.size() / 2 : bps.size()));
        for (const auto &bp : canon) {
            CHECK((n % 2 == 1 || (bp.mask() & 1U) == 1U));
        }
    }
    CHECK_THROWS_AS(enumerate_balanced(1), Error);
}

TEST_CASE("bipartition validation") {
    CHECK_THROWS_AS(Bipartition(3, 0), Error);
    CHECK_THROWS_AS(Bipartition(3, 0b111), Error);
    CHECK_THROWS_AS(Bipartition(3, 0b1000), Error);
    const Bipartition bp(4, 0b0101);
    CHECK(bp.complement().mask() == 0b1010);
    CHECK(bp.dim_a() == 4);
}

TEST_CASE("state validation") {
    CHECK_THROWS_AS(PureState(2, {1.0, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(PureState(1, {1.0, 1.0}), Error);
    CHECK_NOTHROW(PureState(1, {1.0, 1.0}, true));
    CHECK_THROWS_AS(PureState(1, {0.0, 0.0}, true), Error);
    CHECK(PureState::from_phases(std::vector<double>{0.0, 1.0, 2.0, 3.0}).phase_only());
    CHECK_FALSE(PureState::basis(2, 1).phase_only());
}

TEST_CASE("split and merge round trip") {
    Rng rng(11);
    for (int n = 2; n <= 12; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            Mask mask = 0;
            while (mask == 0 || mask == (Mask{1} << n) - 1) {
                mask = static_cast<Mask>(rng.below(Index{1} << n));
            }
            const Bipartition bp(n, mask);
            const IndexSplit split(bp);
            for (Index k = 0; k < (Index{1} << n); ++k) {
                const auto [a, b] = split.split(k);
                std::uint64_t oa, ob;
                oracle::split_bits(k, n, mask, oa, ob);
                REQUIRE(a == oa);
                REQUIRE(b == ob);
                REQUIRE(split.merge(a, b) == k);
            }
        }
    }
}

TEST_CASE("purity examples") {
    const double h = 1.0 / std::sqrt(2.0);
    const PureState ghz(3, {h, 0, 0, 0, 0, 0, 0, h});
    CHECK(purity(ghz, Bipartition(3, 0b011)) == doctest::Approx(0.5).epsilon(1e-14));
    const double t = 1.0 / std::sqrt(3.0);
    const PureState w(3, {0, t, t, 0, t, 0, 0, 0});
    // single-qubit marginal is diag(2/3, 1/3)
    CHECK(std::abs(purity(w, Bipartition(3, 0b001)) - 5.0 / 9.0) < 1e-14);
    Rng rng(3);
    PureState prod = PureState::basis(4, 0);
    for (int q = 0; q < 4; ++q) {
        prod = apply_single_qubit(prod, q, oracle::random_unitary(rng));
    }
    for (const auto &bp : enumerate_balanced(4)) {
        CHECK(std::abs(purity(prod, bp) - 1.0) < 1e-12);
    }
}

TEST_CASE("purity matches the explicit density-matrix oracle") {
    Rng rng(5);
    for (int n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto z = oracle::random_state(n, rng);
            const PureState s = to_state(n, z);
            for (Mask m = 1; m + 1 < (Mask{1} << n); m += (n > 5 ? 7 : 1)) {
                REQUIRE(std::abs(purity(s, Bipartition(n, m)) - oracle::purity(z, n, m)) < 1e-12);
            }
        }
    }
}

TEST_CASE("purity bounds, complement symmetry and local-unitary invariance") {
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        const PureState s = to_state(n, oracle::random_state(n, rng));
        const int q = static_cast<int>(rng.below(static_cast<Index>(n)));
        const PureState u = apply_single_qubit(s, q, oracle::random_unitary(rng));
        for (const auto &bp : enumerate_balanced(n)) {
            const double p = purity(s, bp);
            REQUIRE(p >= 1.0 / static_cast<double>(bp.dim_a()) - 1e-12);
            REQUIRE(p <= 1.0 + 1e-10);
            REQUIRE(std::abs(p - purity(s, bp.complement())) < 1e-12);
            REQUIRE(std::abs(p - purity(u, bp)) < 1e-10);
        }
    }
}
