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
#include <vector>

#include "mmes/kernel.hpp"
#include "mmes/state.hpp"

namespace mmes {

/// Purities over every balanced bipartition of one state, in
/// enumerate_balanced order, with their population statistics.
struct PurityReport {
    int n = 0;
    int n_a = 0;
    std::vector<double> purities;
    double pi_me = 0.0;
    double sigma_me = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Builds a report from raw purities. Variance divides by the count.
PurityReport summarize_purities(int n, std::vector<double> purities);

/// Exact binomial coefficient; 0 when k < 0 or k > n. Throws on overflow.
std::uint64_t binomial(int n, int k);

/// How the spread term enters the optimized objective π_ME + λ·h(σ).
enum class Penalty {
    Variance, ///< h = σ², smooth everywhere
    StdDev,   ///< h = σ, subgradient 0 at σ = 0
};

/// Cached gather plans for all balanced bipartitions of an n-qubit register.
/// Evaluations reuse per-bipartition workspaces, so one instance must not be
/// shared between concurrent callers.
class PotentialEvaluator {
  public:
    explicit PotentialEvaluator(int n, int threads = 1);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int threads() const noexcept { return threads_; }
    [[nodiscard]] const std::vector<Bipartition> &bipartitions() const noexcept { return bps_; }
    [[nodiscard]] const std::vector<GatherPlan> &plans() const noexcept { return plans_; }

    /// Purities of normalized amplitudes z, written to out (one per bipartition).
    void purities(std::span<const Complex> z, std::span<double> out);

    /// Report for normalized amplitudes.
    PurityReport report(std::span<const Complex> z);

    /// f = π_ME + λ·h(σ) and its Wirtinger gradient ∂f/∂z̄ (written to grad,
    /// length 2^n). Returns f; the report receives the purity statistics.
    double value_and_gradient(std::span<const Complex> z, double lambda, Penalty penalty, std::span<Complex> grad,
                              PurityReport *report = nullptr);

  private:
    int n_;
    int threads_;
    std::vector<Bipartition> bps_;
    std::vector<GatherPlan> plans_;
    std::vector<GramWorkspace> ws_;
    std::vector<std::vector<Complex>> partial_;
};

/// Potential of multipartite entanglement with its per-bipartition breakdown.
PurityReport potential_me(const PureState &state, int threads = 1);

/// Value of the cost π_ME + λ σ_ME. λ must be nonnegative.
double cost(const PureState &state, double lambda);
double cost(const PurityReport &report, double lambda);

/// Combinatorial weights g(a, b) of the quartic form for π_ME, memoized on
/// (|a|, |b|).
class DeltaKernel {
  public:
    DeltaKernel(int n, int n_a);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int n_a() const noexcept { return n_a_; }

    /// binomial(n, n_A)^{-1} [a∧b = 0] binomial(n − |a| − |b|, n_A − |a|).
    [[nodiscard]] double g(Index a, Index b) const;

    /// Δ(k1, k2; l1, l2) = g(k1⊕l1 ∨ k2⊕l2, k1⊕l2 ∨ k2⊕l1).
    [[nodiscard]] double delta(Index k1, Index k2, Index l1, Index l2) const {
        return g((k1 ^ l1) | (k2 ^ l2), (k1 ^ l2) | (k2 ^ l1));
    }

  private:
    int n_;
    int n_a_;
    std::vector<double> table_; // (n+1)² entries indexed by |a|(n+1) + |b|
};

double g_coeff(const DeltaKernel &kernel, Index a, Index b);

inline constexpr int kDeltaPathDefaultCap = 8;

/// π_ME from the quartic form Σ Δ z z z̄ z̄, enumerating only the nonzero
/// entries: for each (k1, k2) with d = k1⊕k2 the partners are
/// (k1⊕s, k2⊕s) for s ⊆ d. Cost N·3^n. Throws Capacity above max_qubits.
double potential_via_delta(const PureState &state, int max_qubits = kDeltaPathDefaultCap);

/// Closed form of π_A for the phase state with the given phases:
/// (N_A + N_Ā − 1)/N + N⁻² Σ cos(φ_lm − φ_l'm + φ_l'm' − φ_lm'), summed over
/// ordered pairs l ≠ l' (A part) and m ≠ m' (complement part).
double phase_purity(std::span<const double> phases, const Bipartition &bp);

/// Ordered cosine sum appearing in phase_purity, without the prefactor.
double phase_cosine_sum(std::span<const double> phases, const Bipartition &bp);

} // namespace mmes
