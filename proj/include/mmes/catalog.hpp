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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmes/state.hpp"

namespace mmes {

/// The 32 phases (in units of π, each 0 or 1) of a five-qubit state whose ten
/// balanced purities all equal 1/4. Index k is the basis index.
inline constexpr std::array<int, 32> kMmes5PhaseUnits = {0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0,
                                                         0, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 0};

/// Catalog entry: a named state or analytic family with its known metrics.
struct ReferenceState {
    std::string name;
    int n = 0;                ///< 0 when the family takes n as its option
    int free_params = 0;      ///< free angles accepted by make_reference
    std::string option;       ///< meaning of the integer option, empty if unused
    double pi_me = 0.0;
    double sigma_me = 0.0;
    double tolerance = 1e-12;
    std::string source;       ///< "literature", "exact" or "derived"
    std::string description;
};

const std::vector<ReferenceState> &reference_catalog();
const ReferenceState &find_reference(std::string_view name);

/// Splits "product4" / "product:4" / "psi3-family:2" into a name and option.
std::pair<std::string, int> parse_reference_name(std::string_view text);

/// Builds a catalog state. Families take their free angles in params (empty
/// means all zero). option: qubit count for "product" (params then holds one
/// (θ, φ) pair per qubit), cyclic bit rotation 0..2 for "psi3-family".
PureState make_reference(std::string_view name, std::span<const double> params = {}, int option = -1);

/// Cyclic rotation of the three bits of k by `shift` positions.
Index rotate_bits3(Index k, int shift);

/// Residuals of the three phase relations defining the solution manifold M_p,
/// reduced to (−π, π]. A state is in M_p when all three vanish.
std::array<double, 3> psi3_manifold_residuals(const PureState &state, int shift);

/// Table verdict on the existence of perfect MMES for n qubits.
std::string_view perfect_mmes_verdict(int n);

struct VerificationReport {
    std::string name;
    int n = 0;
    int draws = 0;
    double expected_pi_me = 0.0;
    double expected_sigma_me = 0.0;
    double pi_me = 0.0;      ///< of the last evaluated draw
    double sigma_me = 0.0;
    double pi_residual = 0.0;       ///< worst |π_ME − expected| over draws
    double sigma_residual = 0.0;    ///< worst |σ_ME − expected| over draws
    double purity_residual = 0.0;   ///< worst per-bipartition |π_A − expected| when σ is expected to vanish
    double manifold_residual = 0.0; ///< psi3-family only
    double tolerance = 0.0;
    bool pass = false;
    std::string table_verdict;
};

/// Recomputes the metrics of a catalog entry. Families are checked on
/// `draws` random angle sets drawn from seed.
VerificationReport verify_table(std::string_view name, int draws = 100, std::uint64_t seed = 7);

/// Tensor product of single-qubit Paulis, stored per qubit.
class PauliString {
  public:
    /// Text is read left to right from the most significant qubit (n−1) down
    /// to qubit 0, matching the binary spelling of basis indices.
    explicit PauliString(std::string_view text);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(letters_.size()); }
    [[nodiscard]] char on_qubit(int q) const { return letters_.at(static_cast<std::size_t>(q)); }
    [[nodiscard]] std::string text() const;

  private:
    std::vector<char> letters_; // letters_[q] acts on qubit q
};

/// Re⟨ψ|P|ψ⟩ in O(N). Throws when the imaginary part exceeds 1e-12.
double pauli_expectation(const PureState &state, const PauliString &p);

struct KeyDemoTranscript {
    std::uint64_t seed = 0;
    int shots = 0;
    std::string observable;
    int parity_violations = 0;         ///< shots whose outcome product is −1
    std::array<double, 5> plus_frequency{}; ///< per party, fraction of +1 outcomes
    double max_single_deviation = 0.0; ///< in binomial standard deviations
    double max_pair_deviation = 0.0;   ///< worst two-party cell, in standard deviations
    int key_agreements = 0;            ///< shots where party 1's inferred bit matches
    std::vector<std::string> lines;
};

/// Samples joint outcomes of the five-party correlator on the perfect
/// five-qubit state. Parties 3, 4 and 5 publish; parties 1 and 2 then hold
/// correlated bits. Deterministic given seed.
KeyDemoTranscript key_demo(std::uint64_t seed, int shots = 10000);

} // namespace mmes
