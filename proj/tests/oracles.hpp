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

// Slow, independent reference computations used only by the tests. Nothing
// here shares code with the library kernels.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "mmes/rng.hpp"

namespace oracle {

using C = std::complex<double>;
using Amps = std::vector<C>;

inline Amps random_state(int n, mmes::Rng &rng) {
    Amps z(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &v : z) {
        v = C(rng.normal(), rng.normal());
        norm += std::norm(v);
    }
    for (auto &v : z) {
        v /= std::sqrt(norm);
    }
    return z;
}

inline std::vector<double> random_phases(int n, mmes::Rng &rng) {
    std::vector<double> phi(std::size_t{1} << n);
    for (auto &p : phi) {
        p = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return phi;
}

inline Amps phase_amps(const std::vector<double> &phi) {
    const double a = 1.0 / std::sqrt(static_cast<double>(phi.size()));
    Amps z(phi.size());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        z[k] = std::polar(a, phi[k]);
    }
    return z;
}

/// Splits k into (bits on A, bits off A), walking qubits one at a time.
inline void split_bits(std::uint64_t k, int n, std::uint32_t mask, std::uint64_t &a, std::uint64_t &b) {
    a = 0;
    b = 0;
    int ia = 0;
    int ib = 0;
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = (k >> q) & 1U;
        if ((mask >> q) & 1U) {
            a |= bit << ia++;
        } else {
            b |= bit << ib++;
        }
    }
}

/// Explicit reduced density matrix ρ_A, then Tr ρ_A².
inline double purity(const Amps &z, int n, std::uint32_t mask) {
    int na = 0;
    for (int q = 0; q < n; ++q) {
        na += (mask >> q) & 1U;
    }
    const std::size_t da = std::size_t{1} << na;
    const std::size_t db = z.size() / da;
    // column b of the coefficient table holds the amplitudes sharing the Ā bits b
    std::vector<C> table(z.size());
    for (std::uint64_t k = 0; k < z.size(); ++k) {
        std::uint64_t a, b;
        split_bits(k, n, mask, a, b);
        table[b * da + a] = z[k];
    }
    std::vector<C> rho(da * da);
    for (std::size_t b = 0; b < db; ++b) {
        for (std::size_t i = 0; i < da; ++i) {
            for (std::size_t j = 0; j < da; ++j) {
                rho[i * da + j] += table[b * da + i] * std::conj(table[b * da + j]);
            }
        }
    }
    double p = 0.0;
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            p += std::real(rho[i * da + j] * rho[j * da + i]);
        }
    }
    return p;
}

inline std::vector<std::uint32_t> balanced_masks(int n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
        if (__builtin_popcount(m) == n / 2) {
            out.push_back(m);
        }
    }
    return out;
}

inline double potential(const Amps &z, int n) {
    double s = 0.0;
    const auto masks = balanced_masks(n);
    for (auto m : masks) {
        s += purity(z, n, m);
    }
    return s / static_cast<double>(masks.size());
}

inline double choose(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Δ(k1,k2;l1,l2) straight from its definition: the fraction of balanced A
/// for which l1 = (k2 on A, k1 off A) and l2 = (k1 on A, k2 off A).
inline double delta_by_definition(int n, std::uint64_t k1, std::uint64_t k2, std::uint64_t l1, std::uint64_t l2) {
    const auto masks = balanced_masks(n);
    int hits = 0;
    for (auto m : masks) {
        const std::uint64_t on = m;
        const std::uint64_t off = ~std::uint64_t{m} & ((std::uint64_t{1} << n) - 1);
        const std::uint64_t e1 = (k2 & on) | (k1 & off);
        const std::uint64_t e2 = (k1 & on) | (k2 & off);
        hits += (l1 == e1 && l2 == e2);
    }
    return static_cast<double>(hits) / static_cast<double>(masks.size());
}

/// Naive O(N⁴) quartic form with the closed-form coefficient g written out here.
/// Deliberately uses the mirrored convention (first argument off A); the sum
/// is unchanged because π_A = π_Ā.
inline double potential_quartic(const Amps &z, int n) {
    const int na = n / 2;
    const std::size_t dim = z.size();
    auto g = [&](std::uint64_t a, std::uint64_t b) {
        if ((a & b) != 0) {
            return 0.0;
        }
        const int pa = __builtin_popcountll(a);
        const int pb = __builtin_popcountll(b);
        return choose(n - pa - pb, na - pa) / choose(n, na);
    };
    C s = 0.0;
    for (std::uint64_t k1 = 0; k1 < dim; ++k1) {
        for (std::uint64_t k2 = 0; k2 < dim; ++k2) {
            const C zz = z[k1] * z[k2];
            for (std::uint64_t l1 = 0; l1 < dim; ++l1) {
                for (std::uint64_t l2 = 0; l2 < dim; ++l2) {
                    const double d = g((k1 ^ l2) | (k2 ^ l1), (k1 ^ l1) | (k2 ^ l2));
                    if (d != 0.0) {
                        s += d * zz * std::conj(z[l1] * z[l2]);
                    }
                }
            }
        }
    }
    return s.real();
}

/// ∂π_ME/∂φ_k by differentiating the cosine sum term by term.
inline std::vector<double> phase_gradient(const std::vector<double> &phi, int n) {
    const double big_n = static_cast<double>(phi.size());
    std::vector<double> grad(phi.size(), 0.0);
    const auto masks = balanced_masks(n);
    for (auto m : masks) {
        const int na = __builtin_popcount(m);
        const std::uint64_t da = std::uint64_t{1} << na;
        const std::uint64_t db = std::uint64_t{1} << (n - na);
        // index of (l on A, m off A)
        auto idx = [&](std::uint64_t l, std::uint64_t r) {
            std::uint64_t k = 0;
            int ia = 0;
            int ib = 0;
            for (int q = 0; q < n; ++q) {
                const std::uint64_t bit = ((m >> q) & 1U) ? (l >> ia++) & 1U : (r >> ib++) & 1U;
                k |= bit << q;
            }
            return k;
        };
        for (std::uint64_t l = 0; l < da; ++l) {
            for (std::uint64_t lp = 0; lp < da; ++lp) {
                if (l == lp) {
                    continue;
                }
                for (std::uint64_t r = 0; r < db; ++r) {
                    for (std::uint64_t rp = 0; rp < db; ++rp) {
                        if (r == rp) {
                            continue;
                        }
                        const auto k1 = idx(l, r), k2 = idx(lp, r), k3 = idx(lp, rp), k4 = idx(l, rp);
                        const double x = phi[k1] - phi[k2] + phi[k3] - phi[k4];
                        const double s = -std::sin(x) / (big_n * big_n) / static_cast<double>(masks.size());
                        grad[k1] += s;
                        grad[k2] -= s;
                        grad[k3] += s;
                        grad[k4] -= s;
                    }
                }
            }
        }
    }
    return grad;
}

/// Dense Pauli string matrix; the leftmost letter is the most significant qubit.
inline std::vector<C> pauli_matrix(const std::string &text) {
    const C i(0.0, 1.0);
    std::vector<C> m{1.0};
    std::size_t dim = 1;
    for (char ch : text) {
        std::array<C, 4> p{};
        switch (ch) {
        case 'I': p = {1.0, 0.0, 0.0, 1.0}; break;
        case 'X': p = {0.0, 1.0, 1.0, 0.0}; break;
        case 'Y': p = {0.0, -i, i, 0.0}; break;
        default: p = {1.0, 0.0, 0.0, -1.0}; break;
        }
        std::vector<C> next(dim * 2 * dim * 2);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                for (std::size_t pr = 0; pr < 2; ++pr) {
                    for (std::size_t pc = 0; pc < 2; ++pc) {
                        next[(r * 2 + pr) * (dim * 2) + (c * 2 + pc)] = m[r * dim + c] * p[pr * 2 + pc];
                    }
                }
            }
        }
        m = std::move(next);
        dim *= 2;
    }
    return m;
}

inline C expectation(const Amps &z, const std::vector<C> &m) {
    const std::size_t dim = z.size();
    C s = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            s += std::conj(z[r]) * m[r * dim + c] * z[c];
        }
    }
    return s;
}

/// Haar-ish single-qubit unitary from three angles.
inline std::array<C, 4> random_unitary(mmes::Rng &rng) {
    const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double b = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double t = std::acos(1.0 - 2.0 * rng.uniform());
    const double c = std::cos(t / 2.0);
    const double s = std::sin(t / 2.0);
    return {std::polar(c, a), -std::polar(s, -b), std::polar(s, b), std::polar(c, -a)};
}

} // namespace oracle
