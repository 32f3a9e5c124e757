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

#include "mmes/state.hpp"

namespace mmes {

/// Precomputed gather order for one bipartition: row a of the reshaped
/// coefficient matrix M lives at amplitudes index[a * dim_b + b].
struct GatherPlan {
    explicit GatherPlan(const Bipartition &bp);

    Bipartition bp;
    Index dim_a;
    Index dim_b;
    std::vector<std::uint32_t> index;
    std::vector<std::uint32_t> position; ///< inverse of index: k ↦ a * dim_b + b
};

/// Scratch buffers reused across evaluations of the same plan.
struct GramWorkspace {
    std::vector<Complex> matrix; // dim_a × dim_b, gathered amplitudes
    std::vector<Complex> gram;   // dim_a × dim_a, Hermitian
};

/// Fills ws.matrix and ws.gram = M M†. The amplitudes need not be normalized.
void compute_gram(std::span<const Complex> z, const GatherPlan &plan, GramWorkspace &ws);

/// Σ_{a,a'} |C[a,a']|² for a Hermitian gram matrix of side dim.
double gram_frobenius(std::span<const Complex> gram, Index dim);

/// out[k] += weight · (C M)[a(k), b(k)]. Requires compute_gram on the same
/// plan first. The Wirtinger derivative ∂π_A/∂z̄_k equals 2 (C M)[a(k), b(k)].
void accumulate_gram_product(const GatherPlan &plan, const GramWorkspace &ws, double weight,
                             std::span<Complex> out);

} // namespace mmes
