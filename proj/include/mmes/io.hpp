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

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mmes/analysis.hpp"
#include "mmes/catalog.hpp"
#include "mmes/optimize.hpp"
#include "mmes/potential.hpp"
#include "mmes/state.hpp"

namespace mmes {

using Json = nlohmann::json;

enum class StateFormat {
    Auto,    ///< phases for phase states, complex otherwise
    Complex,
    Phases,
};

/// {"n", "format": "complex", "amplitudes": [[re, im], ...]} or
/// {"n", "format": "phases", "phases": [...]}.
Json state_to_json(const PureState &state, StateFormat format = StateFormat::Auto);

/// Accepts either state layout; "format" may be omitted when only one of
/// "amplitudes" / "phases" is present. A run record is accepted too and
/// yields its best state.
PureState state_from_json(const Json &j, bool renormalize = false);

Json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);
PureState read_state_file(const std::filesystem::path &path, bool renormalize = false);

Json to_json(const PurityReport &r);
Json to_json(const OptimizerConfig &c);
Json to_json(const RunRecord &r);
Json to_json(const VerificationReport &r);
Json to_json(const KeyDemoTranscript &t);
Json to_json(const SymmetryDiagnostics &d);
Json to_json(const FrustrationSummary &s);

OptimizerConfig config_from_json(const Json &j);
RunRecord run_record_from_json(const Json &j);

/// bin_left,bin_right,count
std::string histogram_csv(const AngleHistogram &h);

/// start,iter,cost,grad_norm
std::string trajectory_csv(const RunRecord &r);

} // namespace mmes
