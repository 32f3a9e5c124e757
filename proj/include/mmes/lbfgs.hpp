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

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mmes {

/// f(x) returning the value and writing ∇f into the second argument.
using GradientFunction = std::function<double(std::span<const double>, std::span<double>)>;

/// Called after each accepted step with (iteration, f, ‖∇f‖∞).
using IterationCallback = std::function<void(int, double, double)>;

struct LineSearchOptions {
    double c1 = 1e-4; ///< sufficient decrease
    double c2 = 0.9;  ///< curvature (strong Wolfe)
    int max_evaluations = 40;
    double max_step = 1e10;
};

struct LineSearchResult {
    bool ok = false;
    double step = 0.0;
    double f = 0.0;
    int evaluations = 0;
};

/// Strong-Wolfe line search along direction p from x (bracketing followed by
/// zoom with safeguarded cubic interpolation). On success x, f and g hold the
/// accepted point; otherwise they are unchanged.
LineSearchResult strong_wolfe_search(const GradientFunction &fn, std::vector<double> &x, double &f,
                                     std::vector<double> &g, std::span<const double> p, double initial_step,
                                     const LineSearchOptions &opts, std::span<const std::size_t> fixed = {});

struct DescentOptions {
    int max_iters = 1000;
    double grad_tol = 1e-8;
    int memory = 10;         ///< stored curvature pairs; 0 gives steepest descent
    std::vector<std::size_t> fixed; ///< coordinates whose gradient is zeroed
    LineSearchOptions line_search;
};

struct DescentResult {
    std::vector<double> x;
    double f = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::string stop_reason;
};

/// Limited-memory BFGS (two-loop recursion) with strong-Wolfe steps. Every
/// accepted step strictly decreases f. With memory = 0 this is steepest
/// descent with the same line search.
DescentResult lbfgs_minimize(const GradientFunction &fn, std::vector<double> x0, const DescentOptions &opts,
                             const IterationCallback &on_iteration = {});

} // namespace mmes
