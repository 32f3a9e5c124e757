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
#include <span>
#include <string>
#include <vector>

#include "mmes/optimize.hpp"
#include "mmes/state.hpp"

namespace mmes {

/// Distribution of the cosine arguments x = φ_lm − φ_l'm + φ_l'm' − φ_lm'
/// over all ordered quadruples (l ≠ l', m ≠ m') and all balanced bipartitions.
///
/// Bins have width w = 2π/B and are centred on multiples of w: bin b covers
/// [(b − ½)w, (b + ½)w) modulo 2π. With this layout x = 0 and x = π (for even
/// B) sit at bin centres, and x ↦ 2π − x maps bin b onto bin (B − b) mod B.
struct AngleHistogram {
    int n = 0;
    int bins = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    /// counts per bipartition, filled only when requested
    std::vector<std::vector<std::uint64_t>> per_bipartition;

    [[nodiscard]] double width() const;
    [[nodiscard]] double bin_left(int b) const;
    [[nodiscard]] double bin_right(int b) const;
};

inline constexpr int kDefaultBins = 100;

/// Number of ordered quadruples: binomial(n, n_A)·N_A(N_A−1)·N_Ā(N_Ā−1).
std::uint64_t cosine_argument_count(int n);

/// Bin of an angle under the centred layout above.
int angle_bin(double x, int bins);

AngleHistogram cosine_histogram(std::span<const double> phases, int bins = kDefaultBins,
                                bool per_bipartition = false);

/// Requires a phase state; use arg(z_k) explicitly for anything else.
AngleHistogram cosine_histogram(const PureState &state, int bins = kDefaultBins, bool per_bipartition = false);

struct SymmetryDiagnostics {
    double pi_asymmetry = 0.0;      ///< Σ_b |c(b) − c(B−b)| / total
    std::uint64_t count_cos_plus = 0;  ///< bin at x = 0
    std::uint64_t count_cos_minus = 0; ///< bin at x = π
    double half_pi_asymmetry = 0.0; ///< Σ |c(b) − c(B/2 − b)| / rest, over bins other than 0 and B/2
    double rest_cos_mean = 0.0;     ///< mean cos(bin centre) over those other bins
};

SymmetryDiagnostics symmetry_report(const AngleHistogram &h);

struct FrustrationSummary {
    int n = 0;
    double best_pi_me = 0.0;
    double sigma_at_best = 0.0;
    double floor = 0.0;  ///< 1/N_A
    double gap = 0.0;
    bool frustrated = false;
    std::string observed;      ///< "perfect MMES reached" or "frustrated"
    std::string table_verdict; ///< tabulated existence of perfect MMES for this n
};

inline constexpr double kFrustrationGap = 1e-4;

FrustrationSummary frustration_report(std::span<const RunRecord> records);

} // namespace mmes
