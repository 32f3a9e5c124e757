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

// Command-line front end: every subcommand reads its inputs from files or the
// reference catalog and prints deterministic text (or JSON with --json).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmes/analysis.hpp"
#include "mmes/catalog.hpp"
#include "mmes/errors.hpp"
#include "mmes/io.hpp"
#include "mmes/optimize.hpp"
#include "mmes/potential.hpp"

namespace {

using namespace mmes;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// "0b0101", "0x5", "5", or a qubit list "0,2" (a single qubit as "2,").
Mask parse_mask(const std::string &text, int n) {
    Mask mask = 0;
    try {
        if (text.find(',') != std::string::npos) {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) {
                    continue;
                }
                const int q = std::stoi(item);
                if (q < 0 || q >= n) {
                    fail(ErrorCode::InvalidInput, "qubit " + item + " outside [0, " + std::to_string(n) + ")");
                }
                mask |= Mask{1} << q;
            }
        } else if (text.rfind("0b", 0) == 0 || text.rfind("0B", 0) == 0) {
            mask = static_cast<Mask>(std::stoul(text.substr(2), nullptr, 2));
        } else if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
            mask = static_cast<Mask>(std::stoul(text.substr(2), nullptr, 16));
        } else {
            mask = static_cast<Mask>(std::stoul(text, nullptr, 10));
        }
    } catch (const std::logic_error &) {
        fail(ErrorCode::InvalidInput, "cannot parse mask '" + text + "'");
    }
    return mask;
}

/// A state file path, or a catalog name such as "mmes5" or "product:4".
PureState resolve_state(const std::string &ref, bool renormalize) {
    if (std::filesystem::exists(ref)) {
        return read_state_file(ref, renormalize);
    }
    auto [name, option] = parse_reference_name(ref);
    for (const auto &r : reference_catalog()) {
        if (r.name == name) {
            return make_reference(name, {}, option);
        }
    }
    fail(ErrorCode::Io, "no state file or catalog entry named '" + ref + "'");
}

struct Globals {
    bool json = false;
    int threads = 1;
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multipartite entanglement potential: evaluate, verify and minimize"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Machine-readable JSON output");
    app.add_option("--threads", g.threads, "Worker threads for bipartition and start maps")->check(CLI::PositiveNumber);

    // purity
    auto *purity_cmd = app.add_subcommand("purity", "Purity of one bipartition");
    std::string state_arg;
    std::string mask_arg;
    bool renormalize = false;
    purity_cmd->add_option("--state", state_arg, "State file or catalog name")->required();
    purity_cmd->add_option("--mask", mask_arg, "Subset A: 0b0101, decimal, or qubit list 0,2")->required();
    purity_cmd->add_flag("--renormalize", renormalize, "Rescale the input state instead of rejecting it");

    // potential
    auto *potential_cmd = app.add_subcommand("potential", "Potential of multipartite entanglement");
    bool delta_path = false;
    int delta_cap = kDeltaPathDefaultCap;
    potential_cmd->add_option("--state", state_arg, "State file or catalog name")->required();
    potential_cmd->add_flag("--delta-path", delta_path, "Cross-check through the quartic delta-kernel form");
    potential_cmd->add_option("--delta-cap", delta_cap, "Largest n accepted by the delta-kernel path");
    potential_cmd->add_flag("--renormalize", renormalize, "Rescale the input state instead of rejecting it");

    // minimize
    auto *min_cmd = app.add_subcommand("minimize", "Multistart minimization of the cost function");
    OptimizerConfig cfg;
    std::string param_arg = "phases";
    std::string algo_arg = "quasi-newton";
    std::string penalty_arg = "variance";
    std::string out_path;
    std::string trajectory_path;
    double budget = 0.0;
    min_cmd->add_option("--n", cfg.n, "Qubit count")->required();
    min_cmd->add_option("--param", param_arg, "phases | full-complex");
    min_cmd->add_option("--algo", algo_arg,
                        "quasi-newton | gradient-descent | simulated-annealing | anneal-then-polish");
    min_cmd->add_option("--starts", cfg.starts, "Independent random starts");
    min_cmd->add_option("--lambda", cfg.lambda, "Weight of the spread term");
    min_cmd->add_option("--penalty", penalty_arg, "variance (λσ²) | stddev (λσ) in the optimized objective");
    min_cmd->add_option("--seed", cfg.seed, "Master seed");
    min_cmd->add_option("--max-iters", cfg.max_iters, "Iterations per start (annealing: sweeps)");
    min_cmd->add_option("--polish-iters", cfg.polish_iters, "Descent iterations after annealing");
    min_cmd->add_option("--grad-tol", cfg.grad_tol, "Stop when the sup-norm of the gradient drops below this");
    min_cmd->add_option("--t0", cfg.anneal.t0, "Initial annealing temperature");
    min_cmd->add_option("--cooling", cfg.anneal.cooling, "Temperature factor per sweep");
    min_cmd->add_option("--step", cfg.anneal.step, "Proposal half-width in radians");
    min_cmd->add_option("--budget", budget, "Wall-clock budget in seconds (skips late starts)");
    min_cmd->add_option("--out", out_path, "Write the run record as JSON");
    min_cmd->add_option("--trajectory", trajectory_path, "Write per-iteration CSV (start,iter,cost,grad_norm)");

    // sweep
    auto *sweep_cmd = app.add_subcommand("sweep", "Minimize for a sequence of lambda values with warm starts");
    std::vector<double> lambdas;
    sweep_cmd->add_option("--n", cfg.n, "Qubit count")->required();
    sweep_cmd->add_option("--lambdas", lambdas, "Lambda values, in order")->required()->delimiter(',');
    sweep_cmd->add_option("--param", param_arg, "phases | full-complex");
    sweep_cmd->add_option("--algo", algo_arg, "Algorithm");
    sweep_cmd->add_option("--penalty", penalty_arg, "variance | stddev");
    sweep_cmd->add_option("--starts", cfg.starts, "Fresh starts per lambda");
    sweep_cmd->add_option("--seed", cfg.seed, "Master seed");
    sweep_cmd->add_option("--max-iters", cfg.max_iters, "Iterations per start");
    sweep_cmd->add_option("--out", out_path, "Write all run records as a JSON array");

    // verify
    auto *verify_cmd = app.add_subcommand("verify", "Check a catalog entry against its tabulated metrics");
    std::string case_arg;
    int draws = 100;
    verify_cmd->add_option("--case", case_arg, "Catalog name")->required();
    verify_cmd->add_option("--draws", draws, "Random parameter draws for families");

    // histogram
    auto *hist_cmd = app.add_subcommand("histogram", "Distribution of cosine arguments of a phase state");
    int bins = kDefaultBins;
    hist_cmd->add_option("--state", state_arg, "Phase-state file, run record, or catalog name")->required();
    hist_cmd->add_option("--bins", bins, "Bin count (even for the symmetry report)");
    hist_cmd->add_option("--out", out_path, "Write bin_left,bin_right,count CSV");

    // correlator
    auto *corr_cmd = app.add_subcommand("correlator", "Expectation of a Pauli string");
    std::string pauli_arg;
    corr_cmd->add_option("--state", state_arg, "State file or catalog name")->required();
    corr_cmd->add_option("--pauli", pauli_arg, "Letters from IXYZ, leftmost on the highest qubit")->required();

    // keydemo
    auto *key_cmd = app.add_subcommand("keydemo", "Sample the five-party correlator and the shared key bit");
    std::uint64_t key_seed = 1;
    int shots = 10000;
    key_cmd->add_option("--seed", key_seed, "Sampling seed");
    key_cmd->add_option("--shots", shots, "Number of joint measurements");

    // catalog
    auto *cat_cmd = app.add_subcommand("catalog", "Reference states");
    bool list = false;
    cat_cmd->add_flag("--list", list, "List catalog entries");

    // frustration
    auto *frus_cmd = app.add_subcommand("frustration", "Gap of the best run above the 1/N_A floor");
    std::vector<std::string> record_paths;
    frus_cmd->add_option("--records", record_paths, "Run record JSON files for one n")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        if (purity_cmd->parsed()) {
            const PureState s = resolve_state(state_arg, renormalize);
            const Bipartition bp(s.n(), parse_mask(mask_arg, s.n()));
            const double p = purity(s, bp);
            if (g.json) {
                std::cout << Json{{"n", s.n()}, {"mask", bp.mask()}, {"purity", p}}.dump() << '\n';
            } else {
                std::cout << num(p) << '\n';
            }
        } else if (potential_cmd->parsed()) {
            const PureState s = resolve_state(state_arg, renormalize);
            const PurityReport r = potential_me(s, g.threads);
            Json j = to_json(r);
            double via_delta = 0.0;
            if (delta_path) {
                via_delta = potential_via_delta(s, delta_cap);
                j["delta_pi_me"] = via_delta;
                j["delta_discrepancy"] = std::abs(via_delta - r.pi_me);
            }
            if (g.json) {
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "n " << r.n << "\nn_a " << r.n_a << "\npi_me " << num(r.pi_me) << "\nsigma_me "
                          << num(r.sigma_me) << "\nmin " << num(r.min) << "\nmax " << num(r.max) << '\n';
                if (delta_path) {
                    std::cout << "delta_pi_me " << num(via_delta) << "\ndelta_discrepancy "
                              << num(std::abs(via_delta - r.pi_me)) << '\n';
                }
            }
        } else if (min_cmd->parsed() || sweep_cmd->parsed()) {
            cfg.param = parse_param_kind(param_arg);
            cfg.algorithm = parse_algorithm(algo_arg);
            cfg.penalty = parse_penalty(penalty_arg);
            cfg.threads = g.threads;
            if (budget > 0.0) {
                cfg.budget_seconds = budget;
            }
            cfg.record_trajectory = !trajectory_path.empty();
            std::vector<RunRecord> records;
            if (min_cmd->parsed()) {
                records.push_back(minimize(cfg));
            } else {
                records = lambda_sweep(cfg, lambdas);
            }
            Json out = Json::array();
            for (const auto &rec : records) {
                int converged = 0;
                for (const auto &s : rec.starts) {
                    converged += s.converged;
                }
                if (!g.json) {
                    std::cout << "n=" << rec.config.n << " lambda=" << num(rec.config.lambda)
                              << " best pi_me=" << num(rec.best_report.pi_me)
                              << " sigma_me=" << num(rec.best_report.sigma_me) << " cost=" << num(rec.best_cost)
                              << " start=" << rec.best_start << " converged=" << converged << "/"
                              << rec.starts.size() << '\n';
                }
                for (const auto &f : rec.flags) {
                    std::cerr << "note: " << f << '\n';
                }
                out.push_back(to_json(rec));
            }
            const Json payload = min_cmd->parsed() ? out.at(0) : out;
            if (!out_path.empty()) {
                write_text_file(out_path, payload.dump(2) + "\n");
            }
            if (!trajectory_path.empty()) {
                write_text_file(trajectory_path, trajectory_csv(records.front()));
            }
            if (g.json) {
                std::cout << payload.dump() << '\n';
            }
        } else if (verify_cmd->parsed()) {
            const VerificationReport r = verify_table(case_arg, draws);
            if (g.json) {
                std::cout << to_json(r).dump() << '\n';
            } else {
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " n=" << r.n << " pi_me=" << num(r.pi_me)
                          << " expected=" << num(r.expected_pi_me) << " residual=" << num(r.pi_residual)
                          << " sigma_residual=" << num(r.sigma_residual) << " draws=" << r.draws
                          << " perfect MMES for n=" << r.n << ": " << r.table_verdict << '\n';
            }
            return r.pass ? 0 : 3;
        } else if (hist_cmd->parsed()) {
            const PureState s = resolve_state(state_arg, false);
            const AngleHistogram h = cosine_histogram(s, bins);
            if (!out_path.empty()) {
                write_text_file(out_path, histogram_csv(h));
            }
            Json j{{"n", h.n}, {"bins", h.bins}, {"total", h.total}};
            if (h.bins % 2 == 0) {
                j["symmetry"] = to_json(symmetry_report(h));
            }
            if (g.json) {
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "total " << h.total << '\n';
                if (j.contains("symmetry")) {
                    const auto &d = j["symmetry"];
                    std::cout << "pi_asymmetry " << num(d["pi_asymmetry"].get<double>()) << "\ncount_cos_plus "
                              << d["count_cos_plus"].get<std::uint64_t>() << "\ncount_cos_minus "
                              << d["count_cos_minus"].get<std::uint64_t>() << "\nhalf_pi_asymmetry "
                              << num(d["half_pi_asymmetry"].get<double>()) << '\n';
                }
            }
        } else if (corr_cmd->parsed()) {
            const PureState s = resolve_state(state_arg, false);
            const double v = pauli_expectation(s, PauliString(pauli_arg));
            if (g.json) {
                std::cout << Json{{"pauli", pauli_arg}, {"expectation", v}}.dump() << '\n';
            } else {
                std::cout << num(v) << '\n';
            }
        } else if (key_cmd->parsed()) {
            const KeyDemoTranscript t = key_demo(key_seed, shots);
            if (g.json) {
                std::cout << to_json(t).dump() << '\n';
            } else {
                for (const auto &line : t.lines) {
                    std::cout << line << '\n';
                }
            }
        } else if (cat_cmd->parsed()) {
            Json arr = Json::array();
            for (const auto &r : reference_catalog()) {
                arr.push_back({{"name", r.name},
                               {"n", r.n},
                               {"free_params", r.free_params},
                               {"pi_me", r.pi_me},
                               {"sigma_me", r.sigma_me},
                               {"source", r.source},
                               {"description", r.description}});
                if (!g.json) {
                    std::cout << r.name << "\tn=" << (r.n == 0 ? std::string("any") : std::to_string(r.n))
                              << "\tpi_me=" << num(r.pi_me) << "\tsigma_me=" << num(r.sigma_me) << "\t"
                              << r.source << "\t" << r.description << '\n';
                }
            }
            if (g.json) {
                std::cout << arr.dump() << '\n';
            }
        } else if (frus_cmd->parsed()) {
            std::vector<RunRecord> records;
            for (const auto &p : record_paths) {
                records.push_back(run_record_from_json(read_json_file(p)));
            }
            const FrustrationSummary s = frustration_report(records);
            if (g.json) {
                std::cout << to_json(s).dump() << '\n';
            } else {
                std::cout << "n=" << s.n << " best pi_me=" << num(s.best_pi_me) << " floor=" << num(s.floor)
                          << " gap=" << num(s.gap) << " sigma_me=" << num(s.sigma_at_best) << " " << s.observed
                          << " (perfect MMES for n=" << s.n << ": " << s.table_verdict << ")\n";
            }
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        if (g.json) {
            Json err{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
            if (const auto *nf = dynamic_cast<const NumericalFailure *>(&e)) {
                err["start"] = nf->start_index();
            }
            std::cout << err.dump() << '\n';
        }
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        if (g.json) {
            std::cout << Json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        }
        return 1;
    }
    return 0;
}
