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

#include <cstdio>
#include <filesystem>

#include "mmes/catalog.hpp"
#include "mmes/errors.hpp"
#include "mmes/io.hpp"

using namespace mmes;

TEST_CASE("state json round trip") {
    const PureState s = make_reference("w3");
    const PureState t = state_from_json(state_to_json(s));
    for (Index k = 0; k < s.dim(); ++k) {
        CHECK(s[k] == t[k]);
    }
    const PureState p = make_reference("mmes5");
    CHECK(state_to_json(p)["format"] == "phases");
    CHECK(std::abs(potential_me(state_from_json(state_to_json(p))).pi_me - 0.25) < 1e-12);
    const Json bare = Json::parse(R"({"phases": [0, 0, 0, 3.141592653589793]})");
    CHECK(state_from_json(bare).n() == 2);
}

TEST_CASE("state json errors") {
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"n": 1, "amplitudes": [[1, 0], [1, 0]]})")), Error);
    CHECK_NOTHROW(state_from_json(Json::parse(R"({"n": 1, "amplitudes": [[1, 0], [1, 0]]})"), true));
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"n": 1, "amplitudes": [[1, 0, 0]]})")), Error);
    CHECK_THROWS_AS(state_from_json(Json::parse(R"({"format": "polar"})")), Error);
    CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), Error);
}

TEST_CASE("report fields") {
    const Json j = to_json(potential_me(make_reference("ghz3")));
    for (const char *key : {"n", "n_a", "purities", "pi_me", "sigma_me", "min", "max"}) {
        CHECK(j.contains(key));
    }
    CHECK(j.size() == 7);
}

TEST_CASE("run record round trip") {
    OptimizerConfig c;
    c.n = 3;
    c.starts = 3;
    c.lambda = 0.2;
    c.record_trajectory = true;
    const RunRecord r = minimize(c);
    const RunRecord back = run_record_from_json(Json::parse(to_json(r).dump()));
    CHECK(back.best_cost == r.best_cost);
    CHECK(back.best_params == r.best_params);
    CHECK(back.config.lambda == 0.2);
    CHECK(back.starts.size() == 3);
    CHECK(std::abs(back.best_report.pi_me - r.best_report.pi_me) < 1e-12);
    const std::string csv = trajectory_csv(r);
    CHECK(csv.rfind("start,iter,cost,grad_norm\n", 0) == 0);
    CHECK(!r.trajectory.empty());
}
