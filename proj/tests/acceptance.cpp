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

// Acceptance checks: one PASS/FAIL line per criterion. Criterion 8 is slow
// and runs only with --slow (or --only 8).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mmes/analysis.hpp"
#include "mmes/catalog.hpp"
#include "mmes/gradients.hpp"
#include "mmes/optimize.hpp"
#include "mmes/potential.hpp"
#include "oracles.hpp"

using namespace mmes;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char *title;
    double limit_seconds;
    bool slow;
    std::function<Outcome()> run;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

PureState to_state(int n, const oracle::Amps &z) { return PureState(n, std::vector<Complex>(z.begin(), z.end())); }

Outcome exact_reference() {
    const PurityReport r = potential_me(make_reference("mmes5-phase"));
    double worst = 0.0;
    for (double p : r.purities) {
        worst = std::max(worst, std::abs(p - 0.25));
    }
    Outcome o;
    o.pass = r.purities.size() == 10 && std::abs(r.pi_me - 0.25) < 1e-12 && worst < 1e-12 && r.sigma_me < 1e-12;
    o.detail = "pi_me=" + fmt("%.15g", r.pi_me) + " worst purity residual=" + fmt("%.3g", worst) +
               " sigma_me=" + fmt("%.3g", r.sigma_me);
    return o;
}

Outcome analytic_families() {
    Rng rng(2024);
    double worst = 0.0;
    double manifold = 0.0;
    for (int d = 0; d < 100; ++d) {
        std::vector<double> b(3), p(5);
        for (auto &v : b) {
            v = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        for (auto &v : p) {
            v = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        worst = std::max(worst, std::abs(potential_me(make_reference("bell2-family", b)).pi_me - 0.5));
        for (int rot = 0; rot < 3; ++rot) {
            const PureState s = make_reference("psi3-family", p, rot);
            worst = std::max(worst, std::abs(potential_me(s).pi_me - 0.5));
            for (double r : psi3_manifold_residuals(s, rot)) {
                manifold = std::max(manifold, r);
            }
        }
    }
    return {worst < 1e-12 && manifold < 1e-9,
            "worst |pi_me - 0.5|=" + fmt("%.3g", worst) + " over 100 bell2 + 300 psi3 draws"};
}

Outcome oracle_equivalence() {
    Rng rng(3);
    double purity_err = 0.0;
    double delta_err = 0.0;
    double phase_err = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const auto bps = enumerate_balanced(n);
        for (int t = 0; t < 100; ++t) {
            const auto z = oracle::random_state(n, rng);
            const PureState s = to_state(n, z);
            for (const auto &bp : bps) {
                purity_err = std::max(purity_err, std::abs(purity(s, bp) - oracle::purity(z, n, bp.mask())));
            }
            if (n <= 6) {
                delta_err = std::max(delta_err, std::abs(potential_via_delta(s) - potential_me(s).pi_me));
            }
            const auto phi = oracle::random_phases(n, rng);
            const PureState ps = PureState::from_phases(phi);
            for (const auto &bp : bps) {
                phase_err = std::max(phase_err, std::abs(phase_purity(phi, bp) - purity(ps, bp)));
            }
        }
    }
    return {purity_err < 1e-12 && delta_err < 1e-10 && phase_err < 1e-10,
            "purity err=" + fmt("%.3g", purity_err) + " delta err=" + fmt("%.3g", delta_err) +
                " phase err=" + fmt("%.3g", phase_err)};
}

Outcome gradient_correctness() {
    Rng rng(4);
    double worst = 0.0;
    for (int n = 3; n <= 5; ++n) {
        for (auto kind : {ParamKind::Phases, ParamKind::FullComplex}) {
            const Parametrization param{kind, n};
            for (int t = 0; t < 20; ++t) {
                const auto x = initial_params(param, rng.below(std::uint64_t{1} << 40));
                const double lambda = t % 2 == 0 ? 0.0 : rng.uniform(0.1, 1.0);
                worst = std::max(worst, fd_check(x, param, lambda));
            }
        }
    }
    return {worst < 1e-6, "worst componentwise relative error=" + fmt("%.3g", worst)};
}

Outcome small_n_regression() {
    Outcome o;
    for (int n : {2, 3}) {
        OptimizerConfig c;
        c.n = n;
        c.starts = 5;
        c.seed = 1;
        const RunRecord r = minimize(c);
        o.pass = o.pass && std::abs(r.best_report.pi_me - 0.5) < 1e-9;
        o.detail += "n=" + std::to_string(n) + " best=" + fmt("%.15g", r.best_report.pi_me) + " ";
    }
    return o;
}

Outcome frustration_n4() {
    OptimizerConfig c;
    c.n = 4;
    c.starts = 20;
    c.seed = 1;
    const RunRecord r = minimize(c);
    const double best = r.best_report.pi_me;
    return {best <= 0.3334 && best > 0.25 + 1e-3, "best=" + fmt("%.12g", best) + " over 20 starts"};
}

Outcome perfect_n5() {
    OptimizerConfig c;
    c.n = 5;
    c.starts = 50;
    c.seed = 1;
    const RunRecord r = minimize(c);
    return {r.best_report.pi_me <= 0.2501 && r.best_report.sigma_me < 1e-4,
            "best=" + fmt("%.12g", r.best_report.pi_me) + " sigma_me=" + fmt("%.3g", r.best_report.sigma_me) +
                " over 50 starts"};
}

Outcome extended_targets() {
    Outcome o;
    // n = 6: any of five seeds
    bool n6 = false;
    double n6_best = 1.0;
    for (std::uint64_t seed = 1; seed <= 5 && !n6; ++seed) {
        OptimizerConfig c;
        c.n = 6;
        c.starts = 20;
        c.seed = seed;
        n6_best = minimize(c).best_report.pi_me;
        n6 = n6_best <= 0.1255;
    }
    // n = 7: plain minimum, then a warm-started sweep penalizing σ_ME
    bool n7 = false;
    std::string n7_detail;
    for (std::uint64_t seed = 1; seed <= 5 && !n7; ++seed) {
        OptimizerConfig c;
        c.n = 7;
        c.starts = 20;
        c.seed = seed;
        c.penalty = Penalty::StdDev;
        const std::vector<double> lambdas{0.0, 0.25, 0.5};
        const auto sweep = lambda_sweep(c, lambdas);
        const PurityReport &base = sweep.front().best_report;
        const bool floor_ok = base.pi_me <= 0.137 && base.sigma_me >= 1e-3 && base.sigma_me < 1e-1;
        bool trade = false;
        for (std::size_t i = 1; i < sweep.size(); ++i) {
            const PurityReport &r = sweep[i].best_report;
            if (r.sigma_me < 5e-3 && r.sigma_me < base.sigma_me && r.pi_me > base.pi_me &&
                std::abs(r.pi_me - 0.136) < 1.5e-3) {
                trade = true;
                n7_detail = "lambda=" + fmt("%g", lambdas[i]) + " pi_me=" + fmt("%.6g", r.pi_me) +
                            " sigma_me=" + fmt("%.3g", r.sigma_me);
            }
        }
        n7 = floor_ok && trade;
        n7_detail = "n=7 best=" + fmt("%.6g", base.pi_me) + " sigma_me=" + fmt("%.3g", base.sigma_me) + "; " +
                    n7_detail;
    }
    o.pass = n6 && n7;
    o.detail = "n=6 best=" + fmt("%.6g", n6_best) + "; " + n7_detail;
    return o;
}

Outcome histogram_count() {
    Rng rng(9);
    bool totals = true;
    for (int t = 0; t < 3; ++t) {
        totals = totals && cosine_histogram(oracle::random_phases(6, rng)).total == 62720;
    }
    totals = totals && cosine_histogram(std::vector<double>(64, 0.0)).total == 62720;
    const AngleHistogram h = cosine_histogram(make_reference("mmes5"), kDefaultBins);
    std::uint64_t elsewhere = 0;
    for (int b = 0; b < h.bins; ++b) {
        if (b != 0 && b != h.bins / 2) {
            elsewhere += h.counts[static_cast<std::size_t>(b)];
        }
    }
    const SymmetryDiagnostics d = symmetry_report(h);
    return {totals && elsewhere == 0 && d.pi_asymmetry == 0.0,
            "n=6 total=62720 " + std::string(totals ? "ok" : "wrong") + "; five-qubit state mass at 0: " +
                std::to_string(d.count_cos_plus) + ", at pi: " + std::to_string(d.count_cos_minus) +
                ", elsewhere: " + std::to_string(elsewhere)};
}

Outcome correlator() {
    const double v = pauli_expectation(make_reference("mmes5"), PauliString("ZZYYZ"));
    const KeyDemoTranscript t = key_demo(2024, 10000);
    const double band = 5.0 * 0.5 / std::sqrt(10000.0);
    bool flat = true;
    for (double f : t.plus_frequency) {
        flat = flat && std::abs(f - 0.5) <= band;
    }
    return {std::abs(v - 1.0) < 1e-12 && t.parity_violations == 0 && flat,
            "<ZZYYZ>=" + fmt("%.15g", v) + " parity violations=" + std::to_string(t.parity_violations) +
                " max marginal deviation=" + fmt("%.2f", t.max_single_deviation) + " sd"};
}

Outcome typical_states() {
    Rng rng(11);
    std::vector<double> values;
    for (int t = 0; t < 1000; ++t) {
        values.push_back(potential_me(PureState::from_phases(oracle::random_phases(4, rng))).pi_me);
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / 1000.0;
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    const double se = std::sqrt(var / 999.0 / 1000.0);
    return {std::abs(mean - 7.0 / 16.0) < 3.0 * se,
            "mean=" + fmt("%.6f", mean) + " expected=0.4375 se=" + fmt("%.2g", se)};
}

Outcome property_suite() {
    Rng rng(12);
    int checks = 0;
    int failures = 0;
    auto expect = [&](bool ok) {
        ++checks;
        failures += ok ? 0 : 1;
    };
    for (int t = 0; t < 300; ++t) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const PureState s = to_state(n, oracle::random_state(n, rng));
        const PureState u = apply_single_qubit(s, static_cast<int>(rng.below(static_cast<Index>(n))),
                                               oracle::random_unitary(rng));
        const PurityReport r = potential_me(s);
        const double floor = 1.0 / static_cast<double>(Index{1} << (n / 2));
        expect(r.pi_me >= floor - 1e-12 && r.pi_me <= 1.0 + 1e-10);
        const auto bps = enumerate_balanced(n);
        for (std::size_t i = 0; i < bps.size(); ++i) {
            const double p = r.purities[i];
            expect(p >= 1.0 / static_cast<double>(bps[i].dim_a()) - 1e-12 && p <= 1.0 + 1e-10);
            expect(std::abs(p - purity(s, bps[i].complement())) < 1e-12);
            expect(std::abs(p - purity(u, bps[i])) < 1e-10);
        }
        expect(cost(r, 0.5) >= cost(r, 0.1));
    }
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const Parametrization param{ParamKind::Phases, n};
        auto phi = oracle::random_phases(n, rng);
        const double before = potential_me(decode(phi, param)).pi_me;
        const auto g = grad_potential(phi, param, 0.5);
        expect(std::abs(std::accumulate(g.begin(), g.end(), 0.0)) < 1e-10);
        const double shift = rng.uniform(-5.0, 5.0);
        for (auto &p : phi) {
            p += shift;
        }
        expect(std::abs(potential_me(decode(phi, param)).pi_me - before) < 1e-12);
        const Parametrization full{ParamKind::FullComplex, n};
        const auto x = initial_params(full, rng.below(1U << 30));
        const auto gx = grad_potential(x, full, 0.5);
        expect(std::abs(std::inner_product(x.begin(), x.end(), gx.begin(), 0.0)) < 1e-12);
    }
    for (auto algo : {Algorithm::QuasiNewton, Algorithm::GradientDescent, Algorithm::AnnealThenPolish}) {
        OptimizerConfig c;
        c.n = 4;
        c.starts = 3;
        c.lambda = 0.2;
        c.algorithm = algo;
        c.max_iters = algo == Algorithm::AnnealThenPolish ? 40 : 300;
        c.seed = 77;
        const RunRecord a = minimize(c);
        const RunRecord b = minimize(c);
        c.threads = 2;
        const RunRecord p = minimize(c);
        expect(a.best_params == b.best_params && a.best_cost == b.best_cost);
        expect(a.best_params == p.best_params && a.best_cost == p.best_cost);
        expect(a.best_report.pi_me >= 0.25 - 1e-10 && a.best_report.pi_me <= 1.0 + 1e-10);
    }
    return {failures == 0, std::to_string(checks) + " checks, " + std::to_string(failures) + " failures"};
}

} // namespace

int main(int argc, char **argv) {
    bool slow = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--slow") == 0) {
            slow = true;
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--slow] [--only N]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "exact reference verification", 1.0, false, exact_reference},
        {2, "analytic families", 1.0, false, analytic_families},
        {3, "oracle equivalence", 120.0, false, oracle_equivalence},
        {4, "gradient correctness", 60.0, false, gradient_correctness},
        {5, "optimization regression n=2,3", 10.0, false, small_n_regression},
        {6, "frustration floor n=4", 120.0, false, frustration_n4},
        {7, "perfect state rediscovery n=5", 600.0, false, perfect_n5},
        {8, "extended targets n=6,7", 3600.0, true, extended_targets},
        {9, "histogram count and symmetry", 5.0, false, histogram_count},
        {10, "correlator and key demo", 10.0, false, correlator},
        {11, "typical-state statistics", 30.0, false, typical_states},
        {12, "property suite", 600.0, false, property_suite},
    };

    int failed = 0;
    for (const auto &c : criteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        if (c.slow && !slow && only != c.id) {
            std::printf("SKIP %2d %s (slow; run with --slow)\n", c.id, c.title);
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) {
            o.pass = false;
            o.detail += " (over the " + fmt("%g", c.limit_seconds) + " s limit)";
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2d %s [%.2f s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
