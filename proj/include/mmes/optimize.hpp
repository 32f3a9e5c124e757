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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmes/gradients.hpp"
#include "mmes/potential.hpp"

namespace mmes {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Algorithm {
    QuasiNewton,     ///< L-BFGS with strong-Wolfe steps
    GradientDescent, ///< steepest descent with the same line search
    SimulatedAnnealing,
    AnnealThenPolish,
};

std::string_view to_string(Algorithm algo) noexcept;
Algorithm parse_algorithm(std::string_view text);
std::string_view to_string(Penalty penalty) noexcept;
Penalty parse_penalty(std::string_view text);

/// Metropolis schedule. One sweep makes `dim` single-parameter proposals;
/// the temperature is multiplied by `cooling` after every sweep.
struct AnnealOptions {
    double t0 = 1.0;
    double cooling = 0.995;
    double step = 0.5; ///< half-width of the uniform proposal, radians (scaled by 1/√N for full-complex)
};

struct OptimizerConfig {
    int n = 4;
    ParamKind param = ParamKind::Phases;
    Algorithm algorithm = Algorithm::QuasiNewton;
    double lambda = 0.0;
    Penalty penalty = Penalty::Variance;
    int starts = 10;
    int max_iters = 2000; ///< descent iterations, or annealing sweeps
    double grad_tol = 1e-8;
    std::uint64_t seed = 1;
    std::optional<double> budget_seconds;
    int threads = 1;
    int memory = 10; ///< L-BFGS history length
    int polish_iters = 2000;
    AnnealOptions anneal;
    bool record_trajectory = false;

    /// Throws InvalidConfig on an infeasible configuration.
    void validate() const;
};

struct StartSummary {
    int start = 0;
    std::uint64_t seed = 0;
    bool warm = false;
    double cost = 0.0; ///< π_ME + λ σ_ME at the final point
    double objective = 0.0; ///< optimized objective (penalty form) at the final point
    double pi_me = 0.0;
    double sigma_me = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string stop_reason;
};

struct TrajectoryPoint {
    int start = 0;
    int iter = 0;
    double cost = 0.0;
    double grad_norm = 0.0;
};

struct RunRecord {
    OptimizerConfig config;
    int best_start = -1;
    double best_cost = 0.0;
    std::vector<double> best_params;
    std::vector<Complex> best_amplitudes;
    PurityReport best_report;
    std::vector<StartSummary> starts;
    std::vector<TrajectoryPoint> trajectory;
    int skipped_starts = 0;
    double wall_seconds = 0.0;
    std::string version{kVersion};
    std::vector<std::string> flags;

    [[nodiscard]] PureState best_state() const;
};

/// Multistart minimization of π_ME + λ·h(σ_ME). Start i draws its initial
/// point from Rng(stream_seed(seed, i)); extra initial points (warm starts)
/// run after the fresh starts with indices starts, starts + 1, …
RunRecord minimize(const OptimizerConfig &config, std::span<const std::vector<double>> warm_starts = {});

/// Same contract as minimize; requires an annealing algorithm.
RunRecord anneal(const OptimizerConfig &config);

/// One minimize per λ in order, each warm-started from the previous best.
std::vector<RunRecord> lambda_sweep(const OptimizerConfig &base, std::span<const double> lambdas);

/// Random starting parameters for one start.
std::vector<double> initial_params(const Parametrization &param, std::uint64_t seed);

} // namespace mmes
