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

#include "mmes/optimize.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mmes/errors.hpp"
#include "mmes/kernel.hpp"
#include "mmes/lbfgs.hpp"
#include "mmes/parallel.hpp"
#include "mmes/rng.hpp"

namespace mmes {

std::string_view to_string(Algorithm algo) noexcept {
    switch (algo) {
    case Algorithm::QuasiNewton:
        return "quasi-newton";
    case Algorithm::GradientDescent:
        return "gradient-descent";
    case Algorithm::SimulatedAnnealing:
        return "simulated-annealing";
    case Algorithm::AnnealThenPolish:
        return "anneal-then-polish";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
    if (text == "quasi-newton" || text == "lbfgs") {
        return Algorithm::QuasiNewton;
    }
    if (text == "gradient-descent" || text == "gradient-descent-with-line-search") {
        return Algorithm::GradientDescent;
    }
    if (text == "simulated-annealing" || text == "anneal") {
        return Algorithm::SimulatedAnnealing;
    }
    if (text == "anneal-then-polish") {
        return Algorithm::AnnealThenPolish;
    }
    fail(ErrorCode::InvalidConfig, "unknown algorithm '" + std::string(text) + "'");
}

std::string_view to_string(Penalty penalty) noexcept { return penalty == Penalty::Variance ? "variance" : "stddev"; }

Penalty parse_penalty(std::string_view text) {
    if (text == "variance") {
        return Penalty::Variance;
    }
    if (text == "stddev") {
        return Penalty::StdDev;
    }
    fail(ErrorCode::InvalidConfig, "unknown penalty '" + std::string(text) + "'");
}

namespace {

bool is_annealing(Algorithm a) { return a == Algorithm::SimulatedAnnealing || a == Algorithm::AnnealThenPolish; }

void invalid(const std::string &msg) { fail(ErrorCode::InvalidConfig, msg); }

} // namespace

void OptimizerConfig::validate() const {
    if (n < 2 || n > kMaxQubits) {
        invalid("n must lie in [2, " + std::to_string(kMaxQubits) + "]");
    }
    if (starts < 1) {
        invalid("starts must be >= 1");
    }
    if (max_iters < 0) {
        invalid("max_iters must be >= 0");
    }
    if (!(grad_tol > 0.0)) {
        invalid("grad_tol must be positive");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        invalid("lambda must be a finite nonnegative number");
    }
    if (threads < 1) {
        invalid("threads must be >= 1");
    }
    if (memory < 0) {
        invalid("memory must be >= 0");
    }
    if (budget_seconds && !(*budget_seconds > 0.0)) {
        invalid("budget_seconds must be positive");
    }
    if (algorithm == Algorithm::AnnealThenPolish && polish_iters < 1) {
        invalid("polish_iters must be >= 1");
    }
    if (is_annealing(algorithm)) {
        if (!(anneal.t0 > 0.0) || !(anneal.cooling > 0.0 && anneal.cooling <= 1.0) || !(anneal.step > 0.0)) {
            invalid("annealing needs t0 > 0, cooling in (0, 1] and step > 0");
        }
    }
}

PureState RunRecord::best_state() const {
    return PureState(config.n, best_amplitudes, true);
}

std::vector<double> initial_params(const Parametrization &param, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(param.dim());
    if (param.kind == ParamKind::Phases) {
        for (std::size_t k = 1; k < x.size(); ++k) {
            x[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        return x;
    }
    double norm2 = 0.0;
    for (auto &v : x) {
        v = rng.normal();
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &v : x) {
        v *= inv;
    }
    return x;
}

namespace {

struct Stats {
    double pi_me;
    double sigma_me;
};

Stats stats_of(std::span<const double> raw, double scale) {
    const auto count = static_cast<double>(raw.size());
    double sum = 0.0;
    for (double p : raw) {
        sum += p * scale;
    }
    const double mean = sum / count;
    double var = 0.0;
    for (double p : raw) {
        const double d = p * scale - mean;
        var += d * d;
    }
    return {mean, std::sqrt(var / count)};
}

double objective_of(const Stats &s, double lambda, Penalty penalty) {
    if (lambda == 0.0) {
        return s.pi_me;
    }
    return s.pi_me + lambda * (penalty == Penalty::Variance ? s.sigma_me * s.sigma_me : s.sigma_me);
}

/// Metropolis walk with O(K·N_A) single-amplitude updates: changing z_k only
/// touches row and column a(k) of each Gram matrix.
class Annealer {
  public:
    Annealer(const Parametrization &param, double lambda, Penalty penalty, std::vector<double> x)
        : param_(param), lambda_(lambda), penalty_(penalty), x_(std::move(x)), z_(std::size_t{1} << param.n) {
        for (const auto &bp : enumerate_balanced(param.n)) {
            plans_.emplace_back(bp);
        }
        ws_.resize(plans_.size());
        raw_.resize(plans_.size());
        delta_.resize(plans_.size());
        rebuild();
    }

    void rebuild() {
        norm2_ = 0.0;
        for (std::size_t k = 0; k < z_.size(); ++k) {
            z_[k] = amplitude(k);
            norm2_ += std::norm(z_[k]);
        }
        for (std::size_t i = 0; i < plans_.size(); ++i) {
            compute_gram(z_, plans_[i], ws_[i]);
            raw_[i] = gram_frobenius(ws_[i].gram, plans_[i].dim_a);
        }
    }

    [[nodiscard]] double energy() const { return objective_of(stats(), lambda_, penalty_); }
    [[nodiscard]] Stats stats() const { return stats_of(raw_, 1.0 / (norm2_ * norm2_)); }
    [[nodiscard]] const std::vector<double> &params() const { return x_; }

    /// Energy after changing parameter j to value; stores the pending deltas.
    double propose(std::size_t j, double value) {
        pending_param_ = j;
        pending_value_ = value;
        const std::size_t k = param_.kind == ParamKind::Phases ? j : j / 2;
        pending_k_ = k;
        const double saved = x_[j];
        x_[j] = value;
        pending_z_ = amplitude(k);
        x_[j] = saved;

        const Complex d = pending_z_ - z_[k];
        const double diag_shift = std::norm(pending_z_) - std::norm(z_[k]);
        for (std::size_t i = 0; i < plans_.size(); ++i) {
            const auto &plan = plans_[i];
            const auto &ws = ws_[i];
            const Index da = plan.dim_a;
            const Index db = plan.dim_b;
            const Index pos = plan.position[k];
            const Index a0 = pos / db;
            const Index b0 = pos % db;
            double dp = 0.0;
            for (Index ap = 0; ap < da; ++ap) {
                if (ap == a0) {
                    continue;
                }
                const Complex old_c = ws.gram[a0 * da + ap];
                const Complex new_c = old_c + d * std::conj(ws.matrix[ap * db + b0]);
                dp += 2.0 * (std::norm(new_c) - std::norm(old_c));
            }
            const double old_diag = ws.gram[a0 * da + a0].real();
            const double new_diag = old_diag + diag_shift;
            dp += new_diag * new_diag - old_diag * old_diag;
            delta_[i] = dp;
        }
        pending_norm2_ = norm2_ + diag_shift;
        scratch_.resize(raw_.size());
        for (std::size_t i = 0; i < raw_.size(); ++i) {
            scratch_[i] = raw_[i] + delta_[i];
        }
        return objective_of(stats_of(scratch_, 1.0 / (pending_norm2_ * pending_norm2_)), lambda_, penalty_);
    }

    void commit() {
        const std::size_t k = pending_k_;
        const Complex d = pending_z_ - z_[k];
        const double diag_shift = std::norm(pending_z_) - std::norm(z_[k]);
        for (std::size_t i = 0; i < plans_.size(); ++i) {
            const auto &plan = plans_[i];
            auto &ws = ws_[i];
            const Index da = plan.dim_a;
            const Index db = plan.dim_b;
            const Index pos = plan.position[k];
            const Index a0 = pos / db;
            const Index b0 = pos % db;
            for (Index ap = 0; ap < da; ++ap) {
                if (ap == a0) {
                    continue;
                }
                const Complex c = ws.gram[a0 * da + ap] + d * std::conj(ws.matrix[ap * db + b0]);
                ws.gram[a0 * da + ap] = c;
                ws.gram[ap * da + a0] = std::conj(c);
            }
            ws.gram[a0 * da + a0] += diag_shift;
            ws.matrix[pos] = pending_z_;
            raw_[i] = scratch_[i];
        }
        z_[k] = pending_z_;
        norm2_ = pending_norm2_;
        x_[pending_param_] = pending_value_;
    }

  private:
    [[nodiscard]] Complex amplitude(std::size_t k) const {
        if (param_.kind == ParamKind::Phases) {
            return std::polar(1.0 / std::sqrt(static_cast<double>(z_.size())), x_[k]);
        }
        return {x_[2 * k], x_[2 * k + 1]};
    }

    Parametrization param_;
    double lambda_;
    Penalty penalty_;
    std::vector<double> x_;
    std::vector<Complex> z_;
    std::vector<GatherPlan> plans_;
    std::vector<GramWorkspace> ws_;
    std::vector<double> raw_;
    std::vector<double> delta_;
    std::vector<double> scratch_;
    double norm2_ = 1.0;

    std::size_t pending_param_ = 0;
    double pending_value_ = 0.0;
    std::size_t pending_k_ = 0;
    Complex pending_z_{};
    double pending_norm2_ = 1.0;
};

struct StartOutcome {
    StartSummary summary;
    std::vector<double> x;
    std::vector<TrajectoryPoint> trajectory;
    bool ran = false;
};

void require_finite(double v, int start) {
    if (!std::isfinite(v)) {
        throw NumericalFailure(start, "non-finite objective in start " + std::to_string(start));
    }
}

DescentResult descend(const OptimizerConfig &cfg, Objective &obj, std::vector<double> x, int max_iters, int start,
                      std::vector<TrajectoryPoint> *trajectory) {
    DescentOptions opts;
    opts.max_iters = max_iters;
    opts.grad_tol = cfg.grad_tol;
    opts.memory = cfg.algorithm == Algorithm::GradientDescent ? 0 : cfg.memory;
    opts.fixed = obj.parametrization().gauge();
    GradientFunction fn = [&](std::span<const double> p, std::span<double> g) { return obj.evaluate(p, g); };
    IterationCallback cb;
    if (trajectory != nullptr) {
        cb = [&](int iter, double f, double gnorm) { trajectory->push_back({start, iter, f, gnorm}); };
    }
    DescentResult res = lbfgs_minimize(fn, std::move(x), opts, cb);
    require_finite(res.f, start);
    return res;
}

StartOutcome run_start(const OptimizerConfig &cfg, int index, std::uint64_t seed, const std::vector<double> *warm,
                       int threads) {
    const Parametrization param{cfg.param, cfg.n};
    StartOutcome out;
    out.ran = true;
    out.summary.start = index;
    out.summary.seed = seed;
    out.summary.warm = warm != nullptr;

    std::vector<double> x;
    if (warm != nullptr) {
        if (warm->size() != param.dim()) {
            fail(ErrorCode::InvalidConfig, "warm start has the wrong parameter count");
        }
        x = *warm;
        if (param.kind == ParamKind::Phases) {
            const double ref = x[0];
            for (auto &v : x) {
                v -= ref;
            }
        }
    } else {
        x = initial_params(param, seed);
    }

    auto *traj = cfg.record_trajectory ? &out.trajectory : nullptr;
    Objective obj(param, cfg.lambda, cfg.penalty, threads);
    int iterations = 0;
    bool converged = false;
    std::string reason;

    if (is_annealing(cfg.algorithm)) {
        Annealer walk(param, cfg.lambda, cfg.penalty, x);
        Rng rng(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL));
        double energy = walk.energy();
        require_finite(energy, index);
        double best = energy;
        std::vector<double> best_x = walk.params();
        double temperature = cfg.anneal.t0;
        const std::size_t first_free = param.kind == ParamKind::Phases ? 1 : 0;
        const std::size_t free_count = param.dim() - first_free;
        const double step = param.kind == ParamKind::Phases
                                ? cfg.anneal.step
                                : cfg.anneal.step / std::sqrt(static_cast<double>(std::size_t{1} << cfg.n));
        for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
            for (std::size_t p = 0; p < param.dim(); ++p) {
                const std::size_t j = first_free + rng.below(free_count);
                const double value = walk.params()[j] + rng.uniform(-step, step);
                const double trial = walk.propose(j, value);
                require_finite(trial, index);
                const double u = rng.uniform();
                if (trial <= energy || u < std::exp(-(trial - energy) / temperature)) {
                    walk.commit();
                    energy = trial;
                    if (energy < best) {
                        best = energy;
                        best_x = walk.params();
                    }
                }
            }
            walk.rebuild();
            energy = walk.energy();
            temperature *= cfg.anneal.cooling;
            ++iterations;
            if (traj != nullptr) {
                const Stats s = walk.stats();
                traj->push_back({index, sweep + 1, s.pi_me + cfg.lambda * s.sigma_me,
                                 std::numeric_limits<double>::quiet_NaN()});
            }
        }
        x = std::move(best_x);
        reason = "sweeps";
        if (cfg.algorithm == Algorithm::AnnealThenPolish) {
            DescentResult res = descend(cfg, obj, std::move(x), cfg.polish_iters, index, traj);
            x = std::move(res.x);
            iterations += res.iterations;
            converged = res.converged;
            reason = "polish:" + res.stop_reason;
        }
    } else {
        DescentResult res = descend(cfg, obj, std::move(x), cfg.max_iters, index, traj);
        x = std::move(res.x);
        iterations = res.iterations;
        converged = res.converged;
        reason = res.stop_reason;
    }

    std::vector<double> g(x.size());
    PurityReport rep;
    const double objective = obj.evaluate(x, g, &rep);
    require_finite(objective, index);
    for (auto i : param.gauge()) {
        g[i] = 0.0;
    }
    double gnorm = 0.0;
    for (double v : g) {
        gnorm = std::max(gnorm, std::abs(v));
    }
    out.summary.objective = objective;
    out.summary.pi_me = rep.pi_me;
    out.summary.sigma_me = rep.sigma_me;
    out.summary.cost = rep.pi_me + cfg.lambda * rep.sigma_me;
    out.summary.grad_norm = gnorm;
    out.summary.iterations = iterations;
    out.summary.converged = converged;
    out.summary.stop_reason = reason;
    out.x = std::move(x);
    return out;
}

} // namespace

RunRecord minimize(const OptimizerConfig &config, std::span<const std::vector<double>> warm_starts) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

    const std::size_t total = static_cast<std::size_t>(config.starts) + warm_starts.size();
    std::vector<StartOutcome> outcomes(total);
    const bool parallel_starts = config.threads > 1 && total > 1;
    const int inner_threads = parallel_starts ? 1 : config.threads;
    parallel_for(total, parallel_starts ? config.threads : 1, [&](std::size_t i) {
        if (i > 0 && config.budget_seconds && elapsed() > *config.budget_seconds) {
            return;
        }
        const int index = static_cast<int>(i);
        const std::vector<double> *warm =
            i >= static_cast<std::size_t>(config.starts) ? &warm_starts[i - static_cast<std::size_t>(config.starts)]
                                                         : nullptr;
        outcomes[i] = run_start(config, index, stream_seed(config.seed, i), warm, inner_threads);
    });

    RunRecord rec;
    rec.config = config;
    const StartOutcome *best = nullptr;
    for (const auto &o : outcomes) {
        if (!o.ran) {
            ++rec.skipped_starts;
            continue;
        }
        rec.starts.push_back(o.summary);
        rec.trajectory.insert(rec.trajectory.end(), o.trajectory.begin(), o.trajectory.end());
        // lowest cost wins; near-ties keep the earlier start
        if (best == nullptr || o.summary.cost < best->summary.cost - 1e-12) {
            best = &o;
        }
    }
    const Parametrization param{config.param, config.n};
    rec.best_start = best->summary.start;
    rec.best_cost = best->summary.cost;
    rec.best_params = best->x;
    const PureState state = decode(best->x, param);
    rec.best_amplitudes.assign(state.amplitudes().begin(), state.amplitudes().end());
    rec.best_report = potential_me(state);
    if (config.n >= 8) {
        rec.flags.emplace_back("frustrated regime - slow convergence expected");
    }
    if (rec.skipped_starts > 0) {
        rec.flags.emplace_back("time budget exhausted: " + std::to_string(rec.skipped_starts) + " starts skipped");
    }
    rec.wall_seconds = elapsed();
    return rec;
}

RunRecord anneal(const OptimizerConfig &config) {
    if (!is_annealing(config.algorithm)) {
        fail(ErrorCode::InvalidConfig, "anneal requires simulated-annealing or anneal-then-polish");
    }
    return minimize(config);
}

std::vector<RunRecord> lambda_sweep(const OptimizerConfig &base, std::span<const double> lambdas) {
    std::vector<RunRecord> out;
    std::vector<std::vector<double>> warm;
    for (double lambda : lambdas) {
        OptimizerConfig cfg = base;
        cfg.lambda = lambda;
        out.push_back(minimize(cfg, warm));
        warm.assign(1, out.back().best_params);
    }
    return out;
}

} // namespace mmes
