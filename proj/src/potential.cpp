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

#include "mmes/potential.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mmes/errors.hpp"
#include "mmes/parallel.hpp"

namespace mmes {

PurityReport summarize_purities(int n, std::vector<double> purities) {
    PurityReport r;
    r.n = n;
    r.n_a = n / 2;
    r.purities = std::move(purities);
    const auto count = static_cast<double>(r.purities.size());
    if (r.purities.empty()) {
        return r;
    }
    double sum = 0.0;
    for (double p : r.purities) {
        sum += p;
    }
    r.pi_me = sum / count;
    double var = 0.0;
    for (double p : r.purities) {
        var += (p - r.pi_me) * (p - r.pi_me);
    }
    r.sigma_me = std::sqrt(var / count);
    auto [lo, hi] = std::minmax_element(r.purities.begin(), r.purities.end());
    r.min = *lo;
    r.max = *hi;
    return r;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        const auto num = static_cast<std::uint64_t>(n - k + i);
        // result * num / i is exact at every step; divide first by the gcd to
        // keep the intermediate in range.
        const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
        const std::uint64_t r = result / g;
        const std::uint64_t d = static_cast<std::uint64_t>(i) / g;
        if (r > std::numeric_limits<std::uint64_t>::max() / num) {
            fail(ErrorCode::Capacity, "binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows 64 bits");
        }
        result = r * (num / d);
    }
    return result;
}

PotentialEvaluator::PotentialEvaluator(int n, int threads)
    : n_(n), threads_(std::max(threads, 1)), bps_(enumerate_balanced(n)) {
    plans_.reserve(bps_.size());
    for (const auto &bp : bps_) {
        plans_.emplace_back(bp);
    }
    ws_.resize(bps_.size());
}

void PotentialEvaluator::purities(std::span<const Complex> z, std::span<double> out) {
    parallel_for(plans_.size(), threads_, [&](std::size_t i) {
        compute_gram(z, plans_[i], ws_[i]);
        out[i] = gram_frobenius(ws_[i].gram, plans_[i].dim_a);
    });
}

PurityReport PotentialEvaluator::report(std::span<const Complex> z) {
    std::vector<double> p(plans_.size());
    purities(z, p);
    return summarize_purities(n_, std::move(p));
}

double PotentialEvaluator::value_and_gradient(std::span<const Complex> z, double lambda, Penalty penalty,
                                              std::span<Complex> grad, PurityReport *report_out) {
    const std::size_t count = plans_.size();
    std::vector<double> p(count);
    purities(z, p);
    PurityReport rep = summarize_purities(n_, std::move(p));

    const double inv_count = 1.0 / static_cast<double>(count);
    double value = rep.pi_me;
    std::vector<double> weight(count, inv_count);
    if (lambda != 0.0) {
        if (penalty == Penalty::Variance) {
            value += lambda * rep.sigma_me * rep.sigma_me;
            for (std::size_t i = 0; i < count; ++i) {
                weight[i] += lambda * 2.0 * inv_count * (rep.purities[i] - rep.pi_me);
            }
        } else {
            value += lambda * rep.sigma_me;
            if (rep.sigma_me > 0.0) {
                for (std::size_t i = 0; i < count; ++i) {
                    weight[i] += lambda * inv_count * (rep.purities[i] - rep.pi_me) / rep.sigma_me;
                }
            }
        }
    }

    std::fill(grad.begin(), grad.end(), Complex{});
    if (threads_ <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            accumulate_gram_product(plans_[i], ws_[i], 2.0 * weight[i], grad);
        }
    } else {
        partial_.resize(count);
        parallel_for(count, threads_, [&](std::size_t i) {
            partial_[i].assign(grad.size(), Complex{});
            accumulate_gram_product(plans_[i], ws_[i], 2.0 * weight[i], partial_[i]);
        });
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t k = 0; k < grad.size(); ++k) {
                grad[k] += partial_[i][k];
            }
        }
    }
    if (report_out != nullptr) {
        *report_out = std::move(rep);
    }
    return value;
}

PurityReport potential_me(const PureState &state, int threads) {
    if (state.n() < 2) {
        fail(ErrorCode::InvalidInput, "the potential needs n >= 2");
    }
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        fail(ErrorCode::InvalidState, "state is not normalized");
    }
    PotentialEvaluator eval(state.n(), threads);
    return eval.report(state.amplitudes());
}

double cost(const PurityReport &report, double lambda) {
    if (!(lambda >= 0.0)) {
        fail(ErrorCode::InvalidInput, "lambda must be nonnegative");
    }
    return report.pi_me + lambda * report.sigma_me;
}

double cost(const PureState &state, double lambda) {
    if (!(lambda >= 0.0)) {
        fail(ErrorCode::InvalidInput, "lambda must be nonnegative");
    }
    return cost(potential_me(state), lambda);
}

DeltaKernel::DeltaKernel(int n, int n_a) : n_(n), n_a_(n_a) {
    if (n < 1 || n > kMaxQubits || n_a < 0 || n_a > n) {
        fail(ErrorCode::InvalidInput, "invalid kernel dimensions");
    }
    const double norm = 1.0 / static_cast<double>(binomial(n, n_a));
    table_.assign(static_cast<std::size_t>((n + 1) * (n + 1)), 0.0);
    for (int wa = 0; wa <= n; ++wa) {
        for (int wb = 0; wa + wb <= n; ++wb) {
            table_[static_cast<std::size_t>(wa * (n + 1) + wb)] =
                norm * static_cast<double>(binomial(n - wa - wb, n_a - wa));
        }
    }
}

double DeltaKernel::g(Index a, Index b) const {
    if ((a & b) != 0) {
        return 0.0;
    }
    const int wa = std::popcount(a);
    const int wb = std::popcount(b);
    return table_[static_cast<std::size_t>(wa * (n_ + 1) + wb)];
}

double g_coeff(const DeltaKernel &kernel, Index a, Index b) { return kernel.g(a, b); }

double potential_via_delta(const PureState &state, int max_qubits) {
    const int n = state.n();
    if (n > max_qubits) {
        fail(ErrorCode::Capacity, "delta-kernel path is capped at n=" + std::to_string(max_qubits) + ", got n=" +
                                      std::to_string(n));
    }
    if (n < 2) {
        fail(ErrorCode::InvalidInput, "the potential needs n >= 2");
    }
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        fail(ErrorCode::InvalidState, "state is not normalized");
    }
    DeltaKernel kernel(n, n / 2);
    const auto z = state.amplitudes();
    const Index dim = state.dim();
    Complex total{};
    for (Index k1 = 0; k1 < dim; ++k1) {
        for (Index k2 = 0; k2 < dim; ++k2) {
            const Index d = k1 ^ k2;
            const Complex head = z[k1] * z[k2];
            Complex inner{};
            // every subset s of d, including 0 and d itself
            Index s = d;
            while (true) {
                inner += kernel.g(s, d ^ s) * std::conj(z[k1 ^ s] * z[k2 ^ s]);
                if (s == 0) {
                    break;
                }
                s = (s - 1) & d;
            }
            total += head * inner;
        }
    }
    return total.real();
}

double phase_cosine_sum(std::span<const double> phases, const Bipartition &bp) {
    if (phases.size() != (std::size_t{1} << bp.n())) {
        fail(ErrorCode::InvalidInput, "phase vector length does not match 2^n");
    }
    GatherPlan plan(bp);
    const Index da = plan.dim_a;
    const Index db = plan.dim_b;
    std::vector<double> phi(da * db);
    for (Index i = 0; i < da * db; ++i) {
        phi[i] = phases[plan.index[i]];
    }
    double sum = 0.0;
    for (Index l = 0; l < da; ++l) {
        for (Index lp = 0; lp < da; ++lp) {
            if (l == lp) {
                continue;
            }
            for (Index m = 0; m < db; ++m) {
                for (Index mp = 0; mp < db; ++mp) {
                    if (m == mp) {
                        continue;
                    }
                    sum += std::cos(phi[l * db + m] - phi[lp * db + m] + phi[lp * db + mp] - phi[l * db + mp]);
                }
            }
        }
    }
    return sum;
}

double phase_purity(std::span<const double> phases, const Bipartition &bp) {
    const double big_n = static_cast<double>(std::size_t{1} << bp.n());
    const double typical = (static_cast<double>(bp.dim_a() + bp.dim_complement()) - 1.0) / big_n;
    return typical + phase_cosine_sum(phases, bp) / (big_n * big_n);
}

} // namespace mmes
