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

#include "mmes/catalog.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mmes/errors.hpp"
#include "mmes/potential.hpp"
#include "mmes/rng.hpp"

namespace mmes {

namespace {

constexpr double kPi = std::numbers::pi;

PureState phase_state(std::span<const double> phases) { return PureState::from_phases(phases); }

void expect_params(std::string_view name, std::span<const double> params, std::size_t count) {
    if (!params.empty() && params.size() != count) {
        fail(ErrorCode::InvalidInput, std::string(name) + " takes " + std::to_string(count) + " parameters, got " +
                                          std::to_string(params.size()));
    }
}

double param_or_zero(std::span<const double> params, std::size_t i) { return params.empty() ? 0.0 : params[i]; }

double wrap(double x) {
    // into (−π, π]
    double r = std::remainder(x, 2.0 * kPi);
    return r == -kPi ? kPi : r;
}

} // namespace

const std::vector<ReferenceState> &reference_catalog() {
    static const std::vector<ReferenceState> catalog = {
        {"bell2-family", 2, 3, "", 0.5, 0.0, 1e-12, "literature",
         "two-qubit solutions (e^{i f0}|0> + e^{i f1}|1> + e^{i f2}|2> - e^{i(-f0+f1+f2)}|3>)/2"},
        {"ghz3", 3, 0, "", 0.5, 0.0, 1e-12, "exact", "(|000> + |111>)/sqrt(2)"},
        {"w3", 3, 0, "", 5.0 / 9.0, 0.0, 1e-12, "derived", "(|001> + |010> + |100>)/sqrt(3)"},
        {"psi3-family", 3, 5, "cyclic bit rotation 0..2", 0.5, 0.0, 1e-12, "literature",
         "three-qubit phase solutions, free angles f0 f1 f2 f4 f6"},
        {"mmes5-phase", 5, 0, "", 0.25, 0.0, 1e-12, "literature", "perfect five-qubit phase state with phases in {0, pi}"},
        {"product", 0, 0, "qubit count", 1.0, 0.0, 1e-12, "exact",
         "fully factorized state; optional (theta, phi) per qubit"},
    };
    return catalog;
}

const ReferenceState &find_reference(std::string_view name) {
    for (const auto &r : reference_catalog()) {
        if (r.name == name) {
            return r;
        }
    }
    fail(ErrorCode::InvalidInput, "unknown reference state '" + std::string(name) + "'");
}

std::pair<std::string, int> parse_reference_name(std::string_view text) {
    std::string name(text);
    int option = -1;
    if (auto colon = name.find(':'); colon != std::string::npos) {
        option = std::stoi(name.substr(colon + 1));
        name = name.substr(0, colon);
    } else if (name.rfind("product", 0) == 0 && name.size() > 7) {
        option = std::stoi(name.substr(7));
        name = "product";
    } else if (name == "mmes5") {
        name = "mmes5-phase";
    }
    return {name, option};
}

Index rotate_bits3(Index k, int shift) {
    shift = ((shift % 3) + 3) % 3;
    k &= 7U;
    return ((k << shift) | (k >> (3 - shift))) & 7U;
}

PureState make_reference(std::string_view name, std::span<const double> params, int option) {
    if (name == "bell2-family") {
        expect_params(name, params, 3);
        const double f0 = param_or_zero(params, 0);
        const double f1 = param_or_zero(params, 1);
        const double f2 = param_or_zero(params, 2);
        const std::array<double, 4> phases = {f0, f1, f2, -f0 + f1 + f2 + kPi};
        return phase_state(phases);
    }
    if (name == "ghz3") {
        const double r = 1.0 / std::sqrt(2.0);
        return PureState(3, {r, 0, 0, 0, 0, 0, 0, r});
    }
    if (name == "w3") {
        const double r = 1.0 / std::sqrt(3.0);
        return PureState(3, {0, r, r, 0, r, 0, 0, 0});
    }
    if (name == "psi3-family") {
        expect_params(name, params, 5);
        const int shift = option < 0 ? 0 : option;
        if (shift > 2) {
            fail(ErrorCode::InvalidInput, "psi3-family rotation must be 0, 1 or 2");
        }
        const double f0 = param_or_zero(params, 0);
        const double f1 = param_or_zero(params, 1);
        const double f2 = param_or_zero(params, 2);
        const double f4 = param_or_zero(params, 3);
        const double f6 = param_or_zero(params, 4);
        const std::array<double, 8> base = {
            f0, f1, f2, -f0 + f1 + f2 + kPi, f4, -f0 + f1 + f4 + kPi, f6, -f0 + f1 + f6,
        };
        std::array<double, 8> phases{};
        for (Index k = 0; k < 8; ++k) {
            phases[rotate_bits3(k, shift)] = base[k];
        }
        return phase_state(phases);
    }
    if (name == "mmes5-phase" || name == "mmes5") {
        std::array<double, 32> phases{};
        for (std::size_t k = 0; k < phases.size(); ++k) {
            phases[k] = kMmes5PhaseUnits[k] * kPi;
        }
        return phase_state(phases);
    }
    if (name == "product") {
        if (option < 1 || option > kMaxQubits) {
            fail(ErrorCode::InvalidInput, "product needs a qubit count in [1, 16]");
        }
        const auto n = static_cast<std::size_t>(option);
        expect_params(name, params, 2 * n);
        std::vector<Complex> z(std::size_t{1} << n, Complex{1.0, 0.0});
        for (std::size_t q = 0; q < n; ++q) {
            const double theta = param_or_zero(params, 2 * q);
            const double phi = param_or_zero(params, 2 * q + 1);
            const Complex a0 = std::cos(theta / 2);
            const Complex a1 = std::polar(std::sin(theta / 2), phi);
            for (std::size_t k = 0; k < z.size(); ++k) {
                z[k] *= (k >> q & 1U) ? a1 : a0;
            }
        }
        return PureState(option, std::move(z), true);
    }
    fail(ErrorCode::InvalidInput, "unknown reference state '" + std::string(name) + "'");
}

std::array<double, 3> psi3_manifold_residuals(const PureState &state, int shift) {
    if (state.n() != 3) {
        fail(ErrorCode::InvalidInput, "manifold membership is defined for three qubits");
    }
    const auto phi = state.phases();
    auto at = [&](Index k) { return phi[rotate_bits3(k, shift)]; };
    return {
        wrap(at(0) + at(7) - at(1) - at(6)),
        wrap(at(2) + at(5) - at(4) - at(3)),
        wrap(at(0) + at(3) - at(1) - at(2) - kPi),
    };
}

std::string_view perfect_mmes_verdict(int n) {
    switch (n) {
    case 2:
    case 3:
    case 5:
    case 6:
        return "exist";
    case 4:
        return "do not exist";
    case 7:
        return "unknown";
    default:
        return n >= 8 ? "do not exist" : "n/a";
    }
}

VerificationReport verify_table(std::string_view text, int draws, std::uint64_t seed) {
    auto [name, option] = parse_reference_name(text);
    const ReferenceState &ref = find_reference(name);
    VerificationReport rep;
    rep.name = std::string(text);
    rep.expected_pi_me = ref.pi_me;
    rep.expected_sigma_me = ref.sigma_me;
    rep.tolerance = ref.tolerance;

    Rng rng(seed);
    const bool family = ref.free_params > 0 || name == "product";
    const int count = family ? std::max(draws, 1) : 1;
    const int n_opt = name == "product" ? (option < 1 ? 4 : option) : option;
    for (int d = 0; d < count; ++d) {
        std::vector<double> params;
        if (family && d > 0) {
            const std::size_t np = name == "product" ? 2 * static_cast<std::size_t>(n_opt)
                                                     : static_cast<std::size_t>(ref.free_params);
            params.resize(np);
            for (auto &p : params) {
                p = rng.uniform(0.0, 2.0 * kPi);
            }
        }
        const std::vector<int> shifts = name == "psi3-family" && option < 0 ? std::vector<int>{0, 1, 2}
                                                                             : std::vector<int>{n_opt};
        for (int shift : shifts) {
            const PureState s = make_reference(name, params, shift);
            const PurityReport r = potential_me(s);
            rep.n = s.n();
            rep.pi_me = r.pi_me;
            rep.sigma_me = r.sigma_me;
            rep.pi_residual = std::max(rep.pi_residual, std::abs(r.pi_me - ref.pi_me));
            rep.sigma_residual = std::max(rep.sigma_residual, std::abs(r.sigma_me - ref.sigma_me));
            if (ref.sigma_me == 0.0) {
                for (double p : r.purities) {
                    rep.purity_residual = std::max(rep.purity_residual, std::abs(p - ref.pi_me));
                }
            }
            if (name == "psi3-family") {
                for (double v : psi3_manifold_residuals(s, shift)) {
                    rep.manifold_residual = std::max(rep.manifold_residual, std::abs(v));
                }
            }
            ++rep.draws;
        }
    }
    rep.table_verdict = std::string(perfect_mmes_verdict(rep.n));
    rep.pass = rep.pi_residual <= rep.tolerance && rep.sigma_residual <= rep.tolerance &&
               rep.purity_residual <= rep.tolerance && rep.manifold_residual <= 1e-9;
    return rep;
}

PauliString::PauliString(std::string_view text) {
    if (text.empty()) {
        fail(ErrorCode::InvalidInput, "empty Pauli string");
    }
    letters_.resize(text.size());
    for (std::size_t j = 0; j < text.size(); ++j) {
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[j])));
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            fail(ErrorCode::InvalidInput, "Pauli letters must be I, X, Y or Z");
        }
        letters_[text.size() - 1 - j] = c;
    }
}

std::string PauliString::text() const { return {letters_.rbegin(), letters_.rend()}; }

double pauli_expectation(const PureState &state, const PauliString &p) {
    if (p.size() != state.n()) {
        fail(ErrorCode::InvalidInput, "Pauli string length " + std::to_string(p.size()) + " does not match n=" +
                                          std::to_string(state.n()));
    }
    Index flip = 0;
    Index sign = 0;
    int y_count = 0;
    for (int q = 0; q < p.size(); ++q) {
        const char c = p.on_qubit(q);
        const Index bit = Index{1} << q;
        if (c == 'X' || c == 'Y') {
            flip |= bit;
        }
        if (c == 'Y' || c == 'Z') {
            sign |= bit;
        }
        y_count += c == 'Y';
    }
    // P|k⟩ = i^{#Y} (−1)^{|k ∧ (Y∨Z)|} |k ⊕ (X∨Y)⟩
    static constexpr std::array<Complex, 4> kIPow = {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}};
    const auto z = state.amplitudes();
    Complex acc{};
    for (Index k = 0; k < state.dim(); ++k) {
        const Complex term = std::conj(z[k ^ flip]) * z[k];
        acc += (std::popcount(k & sign) & 1) ? -term : term;
    }
    acc *= kIPow[static_cast<std::size_t>(y_count % 4)];
    if (std::abs(acc.imag()) > 1e-12) {
        fail(ErrorCode::InvalidState, "Pauli expectation has imaginary part " + std::to_string(acc.imag()));
    }
    return acc.real();
}

KeyDemoTranscript key_demo(std::uint64_t seed, int shots) {
    if (shots < 1) {
        fail(ErrorCode::InvalidInput, "shots must be >= 1");
    }
    constexpr int kParties = 5;
    const PauliString observable("ZZYYZ");
    PureState state = make_reference("mmes5-phase");

    // Party j (1-based) holds qubit 5 − j. Rotate Y-measured qubits so the
    // +1 eigenvector of Y maps to |0⟩: U = H S†.
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<Complex, 4> h_sdg = {Complex{r, 0}, Complex{0, -r}, Complex{r, 0}, Complex{0, r}};
    for (int q = 0; q < kParties; ++q) {
        if (observable.on_qubit(q) == 'Y') {
            state = apply_single_qubit(state, q, h_sdg);
        }
    }
    std::vector<double> cdf(state.dim());
    double acc = 0.0;
    for (Index k = 0; k < state.dim(); ++k) {
        acc += std::norm(state[k]);
        cdf[k] = acc;
    }

    KeyDemoTranscript t;
    t.seed = seed;
    t.shots = shots;
    t.observable = observable.text();
    std::array<int, kParties> plus{};
    std::array<std::array<int, 4>, 10> pair_counts{};
    Rng rng(seed);
    auto outcome = [](Index k, int party) { return (k >> (kParties - party) & 1U) ? -1 : 1; };
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const Index k = static_cast<Index>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size() - 1)));
        std::array<int, kParties> o{};
        int product = 1;
        for (int party = 1; party <= kParties; ++party) {
            o[party - 1] = outcome(k, party);
            product *= o[party - 1];
            plus[party - 1] += o[party - 1] == 1;
        }
        t.parity_violations += product != 1;
        int pair = 0;
        for (int a = 0; a < kParties; ++a) {
            for (int b = a + 1; b < kParties; ++b) {
                pair_counts[pair++][(o[a] == 1 ? 0 : 2) + (o[b] == 1 ? 0 : 1)] += 1;
            }
        }
        // Parties 3-5 publish; party 2 predicts party 1's outcome.
        const int inferred = o[1] * o[2] * o[3] * o[4];
        t.key_agreements += inferred == o[0];
        if (s < 8) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "shot %d: outcomes %+d %+d %+d %+d %+d product %+d; published %+d %+d %+d; key bit %d",
                          s, o[0], o[1], o[2], o[3], o[4], product, o[2], o[3], o[4], o[0] == 1 ? 0 : 1);
            t.lines.emplace_back(buf);
        }
    }
    const double n_shots = static_cast<double>(shots);
    const double sd_single = std::sqrt(0.25 / n_shots);
    for (int j = 0; j < kParties; ++j) {
        t.plus_frequency[static_cast<std::size_t>(j)] = plus[static_cast<std::size_t>(j)] / n_shots;
        t.max_single_deviation =
            std::max(t.max_single_deviation, std::abs(t.plus_frequency[static_cast<std::size_t>(j)] - 0.5) / sd_single);
    }
    const double sd_pair = std::sqrt(0.25 * 0.75 / n_shots);
    for (const auto &cells : pair_counts) {
        for (int c : cells) {
            t.max_pair_deviation = std::max(t.max_pair_deviation, std::abs(c / n_shots - 0.25) / sd_pair);
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%d shots, %d parity violations, key agreement %d/%d, max marginal deviation %.2f sd",
                  shots, t.parity_violations, t.key_agreements, shots,
                  std::max(t.max_single_deviation, t.max_pair_deviation));
    t.lines.emplace_back(buf);
    return t;
}

} // namespace mmes
