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

#include <span>
#include <string_view>
#include <vector>

#include "mmes/potential.hpp"
#include "mmes/state.hpp"

namespace mmes {

enum class ParamKind {
    Phases,      ///< φ_k with |z_k| = 1/√N; N parameters, φ_0 pinned by the optimizer
    FullComplex, ///< interleaved (Re x_k, Im x_k); the state is x/‖x‖; 2N parameters
};

std::string_view to_string(ParamKind kind) noexcept;
ParamKind parse_param_kind(std::string_view text);

struct Parametrization {
    ParamKind kind = ParamKind::Phases;
    int n = 2;

    [[nodiscard]] std::size_t dim() const noexcept {
        const std::size_t big_n = std::size_t{1} << n;
        return kind == ParamKind::Phases ? big_n : 2 * big_n;
    }

    /// Parameters held fixed during optimization (removes the global phase).
    [[nodiscard]] std::vector<std::size_t> gauge() const {
        if (kind == ParamKind::Phases) {
            return {0};
        }
        return {};
    }
};

/// Parameters representing the state. Phases are measured relative to φ_0.
std::vector<double> encode(const PureState &state, const Parametrization &param);

PureState decode(std::span<const double> params, const Parametrization &param);

/// Smooth objective over a parametrization: value and real gradient of
/// π_ME + λ·h(σ_ME). Owns its evaluator and scratch buffers; not thread-safe.
class Objective {
  public:
    Objective(const Parametrization &param, double lambda, Penalty penalty, int threads = 1);

    [[nodiscard]] const Parametrization &parametrization() const noexcept { return param_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] Penalty penalty() const noexcept { return penalty_; }

    /// Writes the gradient and returns the value.
    double evaluate(std::span<const double> x, std::span<double> grad, PurityReport *report = nullptr);

    /// Value only.
    double value(std::span<const double> x, PurityReport *report = nullptr);

    /// Normalized amplitudes for x.
    void amplitudes(std::span<const double> x, std::span<Complex> z) const;

  private:
    void check(std::span<const double> x) const;

    Parametrization param_;
    double lambda_;
    Penalty penalty_;
    PotentialEvaluator eval_;
    std::vector<Complex> z_;
    std::vector<Complex> wirtinger_;
};

/// ∂(π_ME + λσ_ME)/∂params. For full-complex parameters the result lies in
/// the tangent space of the sphere through x.
std::vector<double> grad_potential(std::span<const double> params, const Parametrization &param, double lambda);

/// Central-difference gradient of π_ME + λσ_ME with step h: fourth-order
/// stencil, evaluated in long double through explicit reduced density matrices.
std::vector<double> fd_gradient(std::span<const double> params, const Parametrization &param, double lambda,
                                double h = 1e-5);

/// Worst componentwise |analytic − fd| / max(|analytic|, |fd|, 1e-12).
double fd_check(std::span<const double> params, const Parametrization &param, double lambda, double h = 1e-5);

} // namespace mmes
