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

#include "mmes/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <string>

#include "mmes/errors.hpp"

namespace mmes {

std::string_view to_string(ParamKind kind) noexcept {
    return kind == ParamKind::Phases ? "phases" : "full-complex";
}

ParamKind parse_param_kind(std::string_view text) {
    if (text == "phases" || text == "phases-only") {
        return ParamKind::Phases;
    }
    if (text == "full-complex" || text == "complex") {
        return ParamKind::FullComplex;
    }
    fail(ErrorCode::InvalidInput, "unknown parametrization '" + std::string(text) + "'");
}

std::vector<double> encode(const PureState &state, const Parametrization &param) {
    if (state.n() != param.n) {
        fail(ErrorCode::InvalidInput, "state qubit count does not match the parametrization");
    }
    const auto z = state.amplitudes();
    std::vector<double> out;
    if (param.kind == ParamKind::Phases) {
        const double ref = std::arg(z[0]);
        out.resize(z.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
            out[k] = std::remainder(std::arg(z[k]) - ref, 2.0 * M_PI);
        }
        out[0] = 0.0;
    } else {
        out.resize(2 * z.size());
        for (std::size_t k = 0; k < z.size(); ++k) {
            out[2 * k] = z[k].real();
            out[2 * k + 1] = z[k].imag();
        }
    }
    return out;
}

PureState decode(std::span<const double> params, const Parametrization &param) {
    if (params.size() != param.dim()) {
        fail(ErrorCode::InvalidInput, "expected " + std::to_string(param.dim()) + " parameters, got " +
                                          std::to_string(params.size()));
    }
    if (param.kind == ParamKind::Phases) {
        return PureState::from_phases(params);
    }
    std::vector<Complex> z(params.size() / 2);
    for (std::size_t k = 0; k < z.size(); ++k) {
        z[k] = Complex(params[2 * k], params[2 * k + 1]);
    }
    return PureState(param.n, std::move(z), true);
}

Objective::Objective(const Parametrization &param, double lambda, Penalty penalty, int threads)
    : param_(param), lambda_(lambda), penalty_(penalty), eval_(param.n, threads), z_(std::size_t{1} << param.n),
      wirtinger_(std::size_t{1} << param.n) {
    if (!(lambda >= 0.0)) {
        fail(ErrorCode::InvalidInput, "lambda must be nonnegative");
    }
}

void Objective::check(std::span<const double> x) const {
    if (x.size() != param_.dim()) {
        fail(ErrorCode::InvalidInput, "expected " + std::to_string(param_.dim()) + " parameters, got " +
                                          std::to_string(x.size()));
    }
}

void Objective::amplitudes(std::span<const double> x, std::span<Complex> z) const {
    if (param_.kind == ParamKind::Phases) {
        const double modulus = 1.0 / std::sqrt(static_cast<double>(z.size()));
        for (std::size_t k = 0; k < z.size(); ++k) {
            z[k] = std::polar(modulus, x[k]);
        }
        return;
    }
    double norm2 = 0.0;
    for (double v : x) {
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t k = 0; k < z.size(); ++k) {
        z[k] = Complex(x[2 * k] * inv, x[2 * k + 1] * inv);
    }
}

double Objective::value(std::span<const double> x, PurityReport *report) {
    check(x);
    amplitudes(x, z_);
    PurityReport rep = eval_.report(z_);
    double v = rep.pi_me;
    if (lambda_ != 0.0) {
        v += penalty_ == Penalty::Variance ? lambda_ * rep.sigma_me * rep.sigma_me : lambda_ * rep.sigma_me;
    }
    if (report != nullptr) {
        *report = std::move(rep);
    }
    return v;
}

double Objective::evaluate(std::span<const double> x, std::span<double> grad, PurityReport *report) {
    check(x);
    if (grad.size() != x.size()) {
        fail(ErrorCode::InvalidInput, "gradient buffer has the wrong length");
    }
    amplitudes(x, z_);
    const double f = eval_.value_and_gradient(z_, lambda_, penalty_, wirtinger_, report);

    if (param_.kind == ParamKind::Phases) {
        // ∂f/∂φ_k = 2 Im(w_k z̄_k): each φ_k enters four sine terms of the
        // cosine expansion, which factor through the Gram product w.
        for (std::size_t k = 0; k < z_.size(); ++k) {
            grad[k] = 2.0 * (wirtinger_[k] * std::conj(z_[k])).imag();
        }
        return f;
    }

    // Real gradient (2 Re w, 2 Im w) at ẑ, then the chain rule through x/‖x‖.
    double norm2 = 0.0;
    for (double v : x) {
        norm2 += v * v;
    }
    const double r = std::sqrt(norm2);
    double radial = 0.0;
    for (std::size_t k = 0; k < z_.size(); ++k) {
        grad[2 * k] = 2.0 * wirtinger_[k].real();
        grad[2 * k + 1] = 2.0 * wirtinger_[k].imag();
        radial += grad[2 * k] * z_[k].real() + grad[2 * k + 1] * z_[k].imag();
    }
    for (std::size_t k = 0; k < z_.size(); ++k) {
        grad[2 * k] = (grad[2 * k] - radial * z_[k].real()) / r;
        grad[2 * k + 1] = (grad[2 * k + 1] - radial * z_[k].imag()) / r;
    }
    return f;
}

std::vector<double> grad_potential(std::span<const double> params, const Parametrization &param, double lambda) {
    Objective obj(param, lambda, Penalty::StdDev);
    std::vector<double> g(params.size());
    obj.evaluate(params, g);
    return g;
}

namespace {

using Wide = long double;

/// Cost π_ME + λσ_ME in extended precision, straight from explicit ρ_A.
/// Shares nothing with the Gram kernel so the check is independent of it.
class WideCost {
  public:
    WideCost(const Parametrization &param, double lambda) : param_(param), lambda_(lambda) {
        for (const auto &bp : enumerate_balanced(param.n)) {
            const IndexSplit split(bp);
            Part part{bp.dim_a(), bp.dim_complement(), {}};
            part.slot.resize(Index{1} << param.n);
            for (Index k = 0; k < part.slot.size(); ++k) {
                const auto [a, b] = split.split(k);
                part.slot[k] = b * part.da + a;
            }
            parts_.push_back(std::move(part));
        }
    }

    Wide operator()(std::span<const Wide> x) {
        const std::size_t dim = std::size_t{1} << param_.n;
        z_.resize(dim);
        if (param_.kind == ParamKind::Phases) {
            const Wide r = 1.0L / std::sqrt(static_cast<Wide>(dim));
            for (std::size_t k = 0; k < dim; ++k) {
                z_[k] = std::polar(r, x[k]);
            }
        } else {
            Wide norm = 0.0L;
            for (Wide v : x) {
                norm += v * v;
            }
            norm = std::sqrt(norm);
            for (std::size_t k = 0; k < dim; ++k) {
                z_[k] = std::complex<Wide>(x[2 * k], x[2 * k + 1]) / norm;
            }
        }
        std::vector<Wide> pur;
        for (const auto &part : parts_) {
            table_.assign(dim, {});
            for (std::size_t k = 0; k < dim; ++k) {
                table_[part.slot[k]] = z_[k];
            }
            rho_.assign(part.da * part.da, {});
            for (Index b = 0; b < part.db; ++b) {
                const std::complex<Wide> *col = &table_[b * part.da];
                for (Index i = 0; i < part.da; ++i) {
                    for (Index j = 0; j < part.da; ++j) {
                        rho_[i * part.da + j] += col[i] * std::conj(col[j]);
                    }
                }
            }
            Wide p = 0.0L;
            for (const auto &v : rho_) {
                p += std::norm(v);
            }
            pur.push_back(p);
        }
        Wide mean = 0.0L;
        for (Wide p : pur) {
            mean += p;
        }
        mean /= static_cast<Wide>(pur.size());
        Wide var = 0.0L;
        for (Wide p : pur) {
            var += (p - mean) * (p - mean);
        }
        var /= static_cast<Wide>(pur.size());
        return mean + static_cast<Wide>(lambda_) * std::sqrt(var);
    }

  private:
    struct Part {
        Index da;
        Index db;
        std::vector<Index> slot; // k -> b * da + a
    };
    Parametrization param_;
    double lambda_;
    std::vector<Part> parts_;
    std::vector<std::complex<Wide>> z_;
    std::vector<std::complex<Wide>> table_;
    std::vector<std::complex<Wide>> rho_;
};

} // namespace

std::vector<double> fd_gradient(std::span<const double> params, const Parametrization &param, double lambda,
                                double h) {
    if (!(h >= 1e-8 && h <= 1e-3)) {
        fail(ErrorCode::InvalidInput, "finite-difference step must lie in [1e-8, 1e-3]");
    }
    if (params.size() != param.dim()) {
        fail(ErrorCode::InvalidInput, "parameter vector has the wrong length");
    }
    WideCost f(param, lambda);
    std::vector<Wide> x(params.begin(), params.end());
    std::vector<double> g(x.size());
    const Wide step = h;
    // fourth-order central stencil; the O(h²) term of the three-point rule
    // would swamp gradient components of order 1e-6
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Wide saved = x[i];
        Wide acc = 0.0L;
        for (auto [offset, weight] : {std::pair{2, -1.0L}, {1, 8.0L}, {-1, -8.0L}, {-2, 1.0L}}) {
            x[i] = saved + offset * step;
            acc += weight * f(x);
        }
        x[i] = saved;
        g[i] = static_cast<double>(acc / (12.0L * step));
    }
    return g;
}

double fd_check(std::span<const double> params, const Parametrization &param, double lambda, double h) {
    const auto analytic = grad_potential(params, param, lambda);
    const auto numeric = fd_gradient(params, param, lambda, h);
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-12});
        worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / scale);
    }
    return worst;
}

} // namespace mmes
