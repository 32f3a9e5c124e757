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

#include "mmes/state.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "mmes/errors.hpp"
#include "mmes/kernel.hpp"

namespace mmes {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidInput:
        return "invalid-input";
    case ErrorCode::InvalidState:
        return "invalid-state";
    case ErrorCode::Capacity:
        return "capacity";
    case ErrorCode::InvalidConfig:
        return "invalid-config";
    case ErrorCode::NumericalFailure:
        return "numerical-failure";
    case ErrorCode::Parse:
        return "parse";
    case ErrorCode::Io:
        return "io";
    }
    return "unknown";
}

namespace {

void check_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
        fail(ErrorCode::InvalidInput,
             "qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

int qubits_for_length(std::size_t len) {
    if (len < 2 || !std::has_single_bit(len)) {
        fail(ErrorCode::InvalidInput, "amplitude vector length " + std::to_string(len) + " is not 2^n with n >= 1");
    }
    return std::countr_zero(len);
}

} // namespace

PureState::PureState(int n, std::vector<Complex> amplitudes, bool renormalize)
    : n_(n), amps_(std::move(amplitudes)) {
    check_qubits(n);
    if (amps_.size() != (std::size_t{1} << n)) {
        fail(ErrorCode::InvalidInput, "expected " + std::to_string(std::size_t{1} << n) + " amplitudes for n=" +
                                          std::to_string(n) + ", got " + std::to_string(amps_.size()));
    }
    double norm2 = norm_squared();
    if (!std::isfinite(norm2)) {
        fail(ErrorCode::InvalidState, "state has non-finite amplitudes");
    }
    if (renormalize) {
        if (norm2 <= 0.0) {
            fail(ErrorCode::InvalidState, "cannot renormalize the zero vector");
        }
        double scale = 1.0 / std::sqrt(norm2);
        for (auto &z : amps_) {
            z *= scale;
        }
    } else if (std::abs(norm2 - 1.0) > kNormTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "state is not normalized: sum |z_k|^2 = " << norm2;
        fail(ErrorCode::InvalidState, os.str());
    }
    const double modulus = 1.0 / std::sqrt(static_cast<double>(amps_.size()));
    phase_only_ = true;
    for (const auto &z : amps_) {
        if (std::abs(std::abs(z) - modulus) >= 1e-12) {
            phase_only_ = false;
            break;
        }
    }
}

PureState PureState::from_phases(std::span<const double> phases) {
    int n = qubits_for_length(phases.size());
    check_qubits(n);
    const double modulus = 1.0 / std::sqrt(static_cast<double>(phases.size()));
    std::vector<Complex> amps(phases.size());
    for (std::size_t k = 0; k < phases.size(); ++k) {
        amps[k] = std::polar(modulus, phases[k]);
    }
    return PureState(n, std::move(amps));
}

PureState PureState::basis(int n, Index k) {
    check_qubits(n);
    std::vector<Complex> amps(std::size_t{1} << n);
    if (k >= amps.size()) {
        fail(ErrorCode::InvalidInput, "basis index out of range");
    }
    amps[k] = 1.0;
    return PureState(n, std::move(amps));
}

std::vector<double> PureState::phases() const {
    std::vector<double> out(amps_.size());
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        out[k] = std::arg(amps_[k]);
    }
    return out;
}

double PureState::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto &z : amps_) {
        s += std::norm(z);
    }
    return s;
}

Bipartition::Bipartition(int n, Mask mask) : n_(n), mask_(mask) {
    check_qubits(n);
    if (n < 2) {
        fail(ErrorCode::InvalidInput, "a bipartition needs at least 2 qubits");
    }
    const Mask full = (Mask{1} << n) - 1;
    if ((mask & ~full) != 0) {
        fail(ErrorCode::InvalidInput, "mask selects qubits beyond n=" + std::to_string(n));
    }
    if (mask == 0 || mask == full) {
        fail(ErrorCode::InvalidInput, "both parts of a bipartition must be nonempty");
    }
}

int Bipartition::size_a() const noexcept { return std::popcount(mask_); }

Bipartition Bipartition::complement() const {
    return Bipartition(n_, ~mask_ & ((Mask{1} << n_) - 1));
}

std::vector<Bipartition> enumerate_balanced(int n, bool canonical) {
    if (n < 2) {
        fail(ErrorCode::InvalidInput, "balanced bipartitions need n >= 2, got " + std::to_string(n));
    }
    check_qubits(n);
    const int half = n / 2;
    std::vector<Bipartition> out;
    for (Mask m = 1; m < (Mask{1} << n) - 1; ++m) {
        if (std::popcount(m) != half) {
            continue;
        }
        if (canonical && n % 2 == 0 && (m & 1U) == 0) {
            continue;
        }
        out.emplace_back(n, m);
    }
    return out;
}

IndexSplit::IndexSplit(const Bipartition &bp)
    : mask_a_(bp.mask()), mask_b_(~Index{bp.mask()} & ((Index{1} << bp.n()) - 1)) {}

std::pair<Index, Index> split_index(Index k, const Bipartition &bp) {
    if (k >= (Index{1} << bp.n())) {
        fail(ErrorCode::InvalidInput, "basis index out of range");
    }
    return IndexSplit(bp).split(k);
}

double purity(const PureState &state, const Bipartition &bp) {
    if (bp.n() != state.n()) {
        fail(ErrorCode::InvalidInput, "bipartition is for n=" + std::to_string(bp.n()) + " but state has n=" +
                                          std::to_string(state.n()));
    }
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        fail(ErrorCode::InvalidState, "state is not normalized");
    }
    GatherPlan plan(bp);
    GramWorkspace ws;
    compute_gram(state.amplitudes(), plan, ws);
    return gram_frobenius(ws.gram, plan.dim_a);
}

PureState apply_single_qubit(const PureState &state, int qubit, const std::array<Complex, 4> &u) {
    if (qubit < 0 || qubit >= state.n()) {
        fail(ErrorCode::InvalidInput, "qubit index out of range");
    }
    std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
    const Index bit = Index{1} << qubit;
    for (Index k = 0; k < state.dim(); ++k) {
        if (k & bit) {
            continue;
        }
        const Complex a0 = out[k];
        const Complex a1 = out[k | bit];
        out[k] = u[0] * a0 + u[1] * a1;
        out[k | bit] = u[2] * a0 + u[3] * a1;
    }
    return PureState(state.n(), std::move(out), true);
}

} // namespace mmes
