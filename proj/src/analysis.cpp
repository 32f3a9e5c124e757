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

#include "mmes/analysis.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "mmes/catalog.hpp"
#include "mmes/errors.hpp"
#include "mmes/kernel.hpp"
#include "mmes/potential.hpp"

namespace mmes {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double AngleHistogram::width() const { return kTwoPi / bins; }
double AngleHistogram::bin_left(int b) const { return (b - 0.5) * width(); }
double AngleHistogram::bin_right(int b) const { return (b + 0.5) * width(); }

std::uint64_t cosine_argument_count(int n) {
    const int na = n / 2;
    const std::uint64_t da = std::uint64_t{1} << na;
    const std::uint64_t db = std::uint64_t{1} << (n - na);
    return binomial(n, na) * da * (da - 1) * db * (db - 1);
}

int angle_bin(double x, int bins) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    auto b = static_cast<int>(std::floor(r / kTwoPi * bins + 0.5));
    return b >= bins ? b - bins : b;
}

AngleHistogram cosine_histogram(std::span<const double> phases, int bins, bool per_bipartition) {
    if (bins < 2) {
        fail(ErrorCode::InvalidInput, "histogram needs at least 2 bins");
    }
    const std::size_t len = phases.size();
    if (len < 4 || (len & (len - 1)) != 0) {
        fail(ErrorCode::InvalidInput, "phase vector length must be 2^n with n >= 2");
    }
    const int n = std::countr_zero(len);
    AngleHistogram h;
    h.n = n;
    h.bins = bins;
    h.counts.assign(static_cast<std::size_t>(bins), 0);

    std::vector<double> phi;
    for (const auto &bp : enumerate_balanced(n)) {
        GatherPlan plan(bp);
        const Index da = plan.dim_a;
        const Index db = plan.dim_b;
        phi.resize(da * db);
        for (Index i = 0; i < da * db; ++i) {
            phi[i] = phases[plan.index[i]];
        }
        std::vector<std::uint64_t> local(static_cast<std::size_t>(bins), 0);
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
                        const double x = phi[l * db + m] - phi[lp * db + m] + phi[lp * db + mp] - phi[l * db + mp];
                        ++local[static_cast<std::size_t>(angle_bin(x, bins))];
                    }
                }
            }
        }
        for (int b = 0; b < bins; ++b) {
            h.counts[static_cast<std::size_t>(b)] += local[static_cast<std::size_t>(b)];
            h.total += local[static_cast<std::size_t>(b)];
        }
        if (per_bipartition) {
            h.per_bipartition.push_back(std::move(local));
        }
    }
    return h;
}

AngleHistogram cosine_histogram(const PureState &state, int bins, bool per_bipartition) {
    if (!state.phase_only()) {
        fail(ErrorCode::InvalidInput,
             "cosine histogram needs a phase state (equal moduli); pass arg(z_k) explicitly to bin a general state");
    }
    const auto phases = state.phases();
    return cosine_histogram(phases, bins, per_bipartition);
}

SymmetryDiagnostics symmetry_report(const AngleHistogram &h) {
    if (h.bins < 2 || h.bins % 2 != 0) {
        fail(ErrorCode::InvalidInput, "symmetry report needs an even bin count");
    }
    SymmetryDiagnostics d;
    const int bins = h.bins;
    const int half = bins / 2;
    auto count = [&](int b) { return static_cast<double>(h.counts[static_cast<std::size_t>(((b % bins) + bins) % bins)]); };
    if (h.total > 0) {
        double asym = 0.0;
        for (int b = 0; b < bins; ++b) {
            asym += std::abs(count(b) - count(bins - b));
        }
        d.pi_asymmetry = asym / static_cast<double>(h.total);
    }
    d.count_cos_plus = h.counts[0];
    d.count_cos_minus = h.counts[static_cast<std::size_t>(half)];
    const double rest = static_cast<double>(h.total - d.count_cos_plus - d.count_cos_minus);
    if (rest > 0.0) {
        double asym = 0.0;
        double cos_sum = 0.0;
        for (int b = 0; b < bins; ++b) {
            if (b == 0 || b == half) {
                continue;
            }
            asym += std::abs(count(b) - count(half - b));
            cos_sum += count(b) * std::cos(b * h.width());
        }
        d.half_pi_asymmetry = asym / rest;
        d.rest_cos_mean = cos_sum / rest;
    }
    return d;
}

FrustrationSummary frustration_report(std::span<const RunRecord> records) {
    if (records.empty()) {
        fail(ErrorCode::InvalidInput, "frustration report needs at least one run record");
    }
    FrustrationSummary s;
    s.n = records.front().config.n;
    const RunRecord *best = nullptr;
    for (const auto &r : records) {
        if (r.config.n != s.n) {
            fail(ErrorCode::InvalidInput, "run records mix different qubit counts");
        }
        if (best == nullptr || r.best_report.pi_me < best->best_report.pi_me) {
            best = &r;
        }
    }
    s.best_pi_me = best->best_report.pi_me;
    s.sigma_at_best = best->best_report.sigma_me;
    s.floor = 1.0 / static_cast<double>(std::uint64_t{1} << (s.n / 2));
    s.gap = s.best_pi_me - s.floor;
    s.frustrated = s.gap > kFrustrationGap;
    s.observed = s.frustrated ? "frustrated" : "perfect MMES reached";
    s.table_verdict = std::string(perfect_mmes_verdict(s.n));
    return s;
}

} // namespace mmes
