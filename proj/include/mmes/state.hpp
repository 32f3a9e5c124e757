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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mmes {

using Complex = std::complex<double>;
using Index = std::uint64_t;
using Mask = std::uint32_t;

/// Largest register handled by the library.
inline constexpr int kMaxQubits = 16;

/// Tolerance on Σ|z_k|² accepted when a state is constructed or read.
inline constexpr double kNormTolerance = 1e-9;

/// Normalized n-qubit pure state. Basis index k encodes qubit i in bit i
/// (qubit 0 is the least significant bit).
class PureState {
  public:
    /// Validates length 2^n and normalization. With renormalize set, any
    /// nonzero vector is rescaled instead of rejected.
    PureState(int n, std::vector<Complex> amplitudes, bool renormalize = false);

    /// Phase state (1/√N) Σ e^{iφ_k}|k⟩.
    static PureState from_phases(std::span<const double> phases);

    /// |0…0⟩.
    static PureState basis(int n, Index k = 0);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] Index dim() const noexcept { return Index{1} << n_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](Index k) const { return amps_[k]; }

    /// True when every |z_k| equals 1/√N within 1e-12.
    [[nodiscard]] bool phase_only() const noexcept { return phase_only_; }

    /// arg(z_k) for every k.
    [[nodiscard]] std::vector<double> phases() const;

    [[nodiscard]] double norm_squared() const noexcept;

  private:
    int n_;
    std::vector<Complex> amps_;
    bool phase_only_ = false;
};

/// Subset A of the qubits, encoded as a bitmask (bit i set means qubit i ∈ A).
class Bipartition {
  public:
    Bipartition(int n, Mask mask);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] Mask mask() const noexcept { return mask_; }
    [[nodiscard]] int size_a() const noexcept;
    [[nodiscard]] int size_complement() const noexcept { return n_ - size_a(); }
    [[nodiscard]] Index dim_a() const noexcept { return Index{1} << size_a(); }
    [[nodiscard]] Index dim_complement() const noexcept { return Index{1} << size_complement(); }
    [[nodiscard]] Bipartition complement() const;

    friend bool operator==(const Bipartition &, const Bipartition &) = default;

  private:
    int n_;
    Mask mask_;
};

/// All subsets with |A| = ⌊n/2⌋ in ascending mask order. With canonical set,
/// even-n complements are dropped by requiring qubit 0 ∈ A.
std::vector<Bipartition> enumerate_balanced(int n, bool canonical = false);

/// Order-preserving extraction of the bits of k selected by mask.
[[nodiscard]] constexpr Index extract_bits(Index k, Index mask) noexcept {
    Index out = 0;
    int j = 0;
    for (Index m = mask; m != 0; m &= m - 1, ++j) {
        Index low = m & (~m + 1);
        if (k & low) {
            out |= Index{1} << j;
        }
    }
    return out;
}

/// Inverse of extract_bits: scatters the low bits of v onto the set bits of mask.
[[nodiscard]] constexpr Index deposit_bits(Index v, Index mask) noexcept {
    Index out = 0;
    int j = 0;
    for (Index m = mask; m != 0; m &= m - 1, ++j) {
        if (v >> j & 1U) {
            out |= m & (~m + 1);
        }
    }
    return out;
}

/// k ↦ (k^A, k^Ā) and back.
class IndexSplit {
  public:
    explicit IndexSplit(const Bipartition &bp);

    [[nodiscard]] std::pair<Index, Index> split(Index k) const noexcept {
        return {extract_bits(k, mask_a_), extract_bits(k, mask_b_)};
    }
    [[nodiscard]] Index merge(Index a, Index b) const noexcept {
        return deposit_bits(a, mask_a_) | deposit_bits(b, mask_b_);
    }

  private:
    Index mask_a_;
    Index mask_b_;
};

std::pair<Index, Index> split_index(Index k, const Bipartition &bp);

/// Purity Tr ρ_A² through the Gram matrix C = M M†, M[a,b] = z_{merge(a,b)}.
double purity(const PureState &state, const Bipartition &bp);

/// Applies a 2×2 unitary (row-major) to one qubit.
PureState apply_single_qubit(const PureState &state, int qubit, const std::array<Complex, 4> &u);

} // namespace mmes
