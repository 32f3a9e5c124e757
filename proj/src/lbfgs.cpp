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

#include "mmes/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace mmes {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double inf_norm(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void zero_fixed(std::span<double> g, std::span<const std::size_t> fixed) {
    for (auto i : fixed) {
        g[i] = 0.0;
    }
}

/// Minimizer of the cubic through (a, fa, da) and (b, fb, db), or NaN.
double cubic_minimizer(double a, double fa, double da, double b, double fb, double db) {
    const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
    const double disc = d1 * d1 - da * db;
    if (!(disc >= 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = db - da + 2.0 * d2;
    if (denom == 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return b - (b - a) * (db + d2 - d1) / denom;
}

struct Probe {
    double step;
    double f;
    double slope;
};

} // namespace

LineSearchResult strong_wolfe_search(const GradientFunction &fn, std::vector<double> &x, double &f,
                                     std::vector<double> &g, std::span<const double> p, double initial_step,
                                     const LineSearchOptions &opts, std::span<const std::size_t> fixed) {
    LineSearchResult res;
    const double f0 = f;
    const double slope0 = dot(g, p);
    if (!(slope0 < 0.0)) {
        return res;
    }

    std::vector<double> trial(x.size());
    std::vector<double> gt(x.size());
    auto probe = [&](double step) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            trial[i] = x[i] + step * p[i];
        }
        const double ft = fn(trial, gt);
        zero_fixed(gt, fixed);
        ++res.evaluations;
        return Probe{step, ft, dot(gt, p)};
    };
    auto accept = [&](const Probe &pr) {
        x = trial;
        g = gt;
        f = pr.f;
        res.ok = true;
        res.step = pr.step;
        res.f = pr.f;
        return res;
    };
    auto armijo = [&](const Probe &pr) { return pr.f <= f0 + opts.c1 * pr.step * slope0; };
    auto curvature = [&](const Probe &pr) { return std::abs(pr.slope) <= -opts.c2 * slope0; };

    auto zoom = [&](Probe lo, Probe hi) -> LineSearchResult {
        while (res.evaluations < opts.max_evaluations) {
            const double left = std::min(lo.step, hi.step);
            const double right = std::max(lo.step, hi.step);
            const double width = right - left;
            if (width <= std::numeric_limits<double>::epsilon() * std::max(1.0, right)) {
                break;
            }
            double step = cubic_minimizer(lo.step, lo.f, lo.slope, hi.step, hi.f, hi.slope);
            if (!std::isfinite(step) || step < left + 0.1 * width || step > right - 0.1 * width) {
                step = 0.5 * (lo.step + hi.step);
            }
            Probe pr = probe(step);
            if (!std::isfinite(pr.f) || !armijo(pr) || pr.f >= lo.f) {
                hi = pr;
            } else {
                if (curvature(pr)) {
                    return accept(pr);
                }
                if (pr.slope * (hi.step - lo.step) >= 0.0) {
                    hi = lo;
                }
                lo = pr;
            }
        }
        // Fall back to the best sufficient-decrease point seen, if any.
        if (lo.step > 0.0 && armijo(lo) && lo.f < f0) {
            probe(lo.step);
            return accept(lo);
        }
        return res;
    };

    Probe prev{0.0, f0, slope0};
    double step = std::min(initial_step, opts.max_step);
    while (res.evaluations < opts.max_evaluations) {
        Probe cur = probe(step);
        if (!std::isfinite(cur.f)) {
            // Overshot into a non-finite region; shrink and retry.
            step = 0.5 * (prev.step + step);
            continue;
        }
        if (!armijo(cur) || (res.evaluations > 1 && cur.f >= prev.f)) {
            return zoom(prev, cur);
        }
        if (curvature(cur)) {
            return accept(cur);
        }
        if (cur.slope >= 0.0) {
            return zoom(cur, prev);
        }
        prev = cur;
        if (step >= opts.max_step) {
            return accept(cur);
        }
        step = std::min(2.0 * step, opts.max_step);
    }
    return res;
}

DescentResult lbfgs_minimize(const GradientFunction &fn, std::vector<double> x0, const DescentOptions &opts,
                             const IterationCallback &on_iteration) {
    DescentResult out;
    out.x = std::move(x0);
    const std::size_t dim = out.x.size();
    std::vector<double> g(dim);
    double f = fn(out.x, g);
    zero_fixed(g, opts.fixed);
    out.evaluations = 1;
    out.f = f;
    out.grad_norm = inf_norm(g);
    if (!std::isfinite(f)) {
        out.stop_reason = "non-finite";
        return out;
    }

    struct Pair {
        std::vector<double> s;
        std::vector<double> y;
        double rho;
    };
    std::deque<Pair> history;
    std::vector<double> p(dim);
    std::vector<double> alpha;
    std::vector<double> x_prev(dim);
    std::vector<double> g_prev(dim);
    double prev_slope = 0.0;
    double prev_step = 0.0;

    while (true) {
        if (out.grad_norm < opts.grad_tol) {
            out.converged = true;
            out.stop_reason = "gradient-tolerance";
            break;
        }
        if (out.iterations >= opts.max_iters) {
            out.stop_reason = "max-iterations";
            break;
        }

        // Two-loop recursion: p = −H g.
        std::copy(g.begin(), g.end(), p.begin());
        alpha.assign(history.size(), 0.0);
        for (std::size_t j = history.size(); j-- > 0;) {
            alpha[j] = history[j].rho * dot(history[j].s, p);
            for (std::size_t i = 0; i < dim; ++i) {
                p[i] -= alpha[j] * history[j].y[i];
            }
        }
        if (!history.empty()) {
            const auto &last = history.back();
            const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
            for (auto &v : p) {
                v *= gamma;
            }
        }
        for (std::size_t j = 0; j < history.size(); ++j) {
            const double beta = history[j].rho * dot(history[j].y, p);
            for (std::size_t i = 0; i < dim; ++i) {
                p[i] += (alpha[j] - beta) * history[j].s[i];
            }
        }
        for (auto &v : p) {
            v = -v;
        }
        zero_fixed(p, opts.fixed);

        double slope = dot(g, p);
        if (!(slope < 0.0)) {
            // Lost descent; restart from steepest descent.
            history.clear();
            for (std::size_t i = 0; i < dim; ++i) {
                p[i] = -g[i];
            }
            slope = dot(g, p);
        }

        double step = 1.0;
        if (history.empty()) {
            if (prev_step > 0.0 && opts.memory == 0) {
                // first-order change matches the previous step
                step = prev_step * prev_slope / slope;
            } else {
                step = std::min(1.0, 1.0 / std::max(out.grad_norm, 1e-300));
            }
        }

        x_prev = out.x;
        g_prev = g;
        LineSearchResult ls = strong_wolfe_search(fn, out.x, f, g, p, step, opts.line_search, opts.fixed);
        out.evaluations += ls.evaluations;
        if (!ls.ok) {
            if (!history.empty()) {
                history.clear();
                continue;
            }
            out.stop_reason = "line-search";
            break;
        }
        if (!std::isfinite(f)) {
            out.stop_reason = "non-finite";
            out.f = f;
            return out;
        }
        ++out.iterations;
        prev_step = ls.step;
        prev_slope = slope;
        out.f = f;
        out.grad_norm = inf_norm(g);
        if (on_iteration) {
            on_iteration(out.iterations, f, out.grad_norm);
        }

        if (opts.memory > 0) {
            Pair pair{std::vector<double>(dim), std::vector<double>(dim), 0.0};
            for (std::size_t i = 0; i < dim; ++i) {
                pair.s[i] = out.x[i] - x_prev[i];
                pair.y[i] = g[i] - g_prev[i];
            }
            const double sy = dot(pair.s, pair.y);
            if (sy > 1e-16 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
                pair.rho = 1.0 / sy;
                history.push_back(std::move(pair));
                if (static_cast<int>(history.size()) > opts.memory) {
                    history.pop_front();
                }
            }
        }
    }
    out.f = f;
    return out;
}

} // namespace mmes
