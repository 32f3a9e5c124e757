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

#include "mmes/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mmes/errors.hpp"

namespace mmes {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

template <class T>
T field(const Json &j, const char *key) {
    if (!j.contains(key)) {
        fail(ErrorCode::Parse, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception &e) {
        fail(ErrorCode::Parse, std::string("bad field '") + key + "': " + e.what());
    }
}

} // namespace

Json state_to_json(const PureState &state, StateFormat format) {
    if (format == StateFormat::Auto) {
        format = state.phase_only() ? StateFormat::Phases : StateFormat::Complex;
    }
    Json j;
    j["n"] = state.n();
    if (format == StateFormat::Phases) {
        if (!state.phase_only()) {
            fail(ErrorCode::InvalidInput, "only a phase state can be written in the phases format");
        }
        j["format"] = "phases";
        j["phases"] = state.phases();
    } else {
        j["format"] = "complex";
        Json amps = Json::array();
        for (const auto &z : state.amplitudes()) {
            amps.push_back({z.real(), z.imag()});
        }
        j["amplitudes"] = std::move(amps);
    }
    return j;
}

PureState state_from_json(const Json &j, bool renormalize) {
    if (!j.is_object()) {
        fail(ErrorCode::Parse, "state file must hold a JSON object");
    }
    if (j.contains("best_state")) {
        return state_from_json(j.at("best_state"), renormalize);
    }
    std::string format;
    if (j.contains("format")) {
        format = field<std::string>(j, "format");
    } else if (j.contains("phases")) {
        format = "phases";
    } else {
        format = "complex";
    }
    if (format == "phases") {
        auto phases = field<std::vector<double>>(j, "phases");
        PureState s = PureState::from_phases(phases);
        if (j.contains("n") && field<int>(j, "n") != s.n()) {
            fail(ErrorCode::Parse, "field 'n' disagrees with the number of phases");
        }
        return s;
    }
    if (format != "complex") {
        fail(ErrorCode::Parse, "format must be \"complex\" or \"phases\"");
    }
    const auto rows = field<std::vector<std::vector<double>>>(j, "amplitudes");
    std::vector<Complex> amps;
    amps.reserve(rows.size());
    for (const auto &row : rows) {
        if (row.size() != 2) {
            fail(ErrorCode::Parse, "each amplitude must be a [re, im] pair");
        }
        amps.emplace_back(row[0], row[1]);
    }
    int n = 0;
    if (j.contains("n")) {
        n = field<int>(j, "n");
    } else {
        while ((std::size_t{1} << n) < amps.size()) {
            ++n;
        }
    }
    return PureState(n, std::move(amps), renormalize);
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        fail(ErrorCode::Parse, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    out << text;
}

PureState read_state_file(const std::filesystem::path &path, bool renormalize) {
    return state_from_json(read_json_file(path), renormalize);
}

Json to_json(const PurityReport &r) {
    return Json{{"n", r.n},           {"n_a", r.n_a},   {"purities", r.purities}, {"pi_me", r.pi_me},
                {"sigma_me", r.sigma_me}, {"min", r.min}, {"max", r.max}};
}

Json to_json(const OptimizerConfig &c) {
    Json j{{"n", c.n},
           {"param", std::string(to_string(c.param))},
           {"algorithm", std::string(to_string(c.algorithm))},
           {"lambda", c.lambda},
           {"penalty", std::string(to_string(c.penalty))},
           {"starts", c.starts},
           {"max_iters", c.max_iters},
           {"grad_tol", c.grad_tol},
           {"seed", c.seed},
           {"threads", c.threads},
           {"memory", c.memory},
           {"polish_iters", c.polish_iters},
           {"anneal", {{"t0", c.anneal.t0}, {"cooling", c.anneal.cooling}, {"step", c.anneal.step}}}};
    j["budget_seconds"] = c.budget_seconds ? Json(*c.budget_seconds) : Json(nullptr);
    return j;
}

OptimizerConfig config_from_json(const Json &j) {
    OptimizerConfig c;
    c.n = field<int>(j, "n");
    c.param = parse_param_kind(field<std::string>(j, "param"));
    c.algorithm = parse_algorithm(field<std::string>(j, "algorithm"));
    c.lambda = field<double>(j, "lambda");
    c.penalty = parse_penalty(j.value("penalty", std::string("variance")));
    c.starts = field<int>(j, "starts");
    c.max_iters = field<int>(j, "max_iters");
    c.grad_tol = field<double>(j, "grad_tol");
    c.seed = field<std::uint64_t>(j, "seed");
    c.threads = j.value("threads", 1);
    c.memory = j.value("memory", 10);
    c.polish_iters = j.value("polish_iters", 2000);
    if (j.contains("anneal")) {
        const auto &a = j.at("anneal");
        c.anneal.t0 = a.value("t0", c.anneal.t0);
        c.anneal.cooling = a.value("cooling", c.anneal.cooling);
        c.anneal.step = a.value("step", c.anneal.step);
    }
    if (j.contains("budget_seconds") && !j.at("budget_seconds").is_null()) {
        c.budget_seconds = j.at("budget_seconds").get<double>();
    }
    return c;
}

Json to_json(const RunRecord &r) {
    Json starts = Json::array();
    for (const auto &s : r.starts) {
        starts.push_back({{"start", s.start},
                          {"seed", s.seed},
                          {"warm", s.warm},
                          {"cost", s.cost},
                          {"objective", s.objective},
                          {"pi_me", s.pi_me},
                          {"sigma_me", s.sigma_me},
                          {"grad_norm", s.grad_norm},
                          {"iterations", s.iterations},
                          {"converged", s.converged},
                          {"stop_reason", s.stop_reason}});
    }
    return Json{{"version", r.version},
                {"config", to_json(r.config)},
                {"best_start", r.best_start},
                {"best_cost", r.best_cost},
                {"pi_me", r.best_report.pi_me},
                {"sigma_me", r.best_report.sigma_me},
                {"best_params", r.best_params},
                {"best_state", state_to_json(r.best_state(), StateFormat::Complex)},
                {"report", to_json(r.best_report)},
                {"starts", std::move(starts)},
                {"skipped_starts", r.skipped_starts},
                {"wall_seconds", r.wall_seconds},
                {"flags", r.flags}};
}

RunRecord run_record_from_json(const Json &j) {
    RunRecord r;
    r.config = config_from_json(field<Json>(j, "config"));
    r.version = j.value("version", std::string());
    r.best_start = field<int>(j, "best_start");
    r.best_cost = field<double>(j, "best_cost");
    r.best_params = field<std::vector<double>>(j, "best_params");
    const PureState s = state_from_json(field<Json>(j, "best_state"));
    r.best_amplitudes.assign(s.amplitudes().begin(), s.amplitudes().end());
    r.best_report = potential_me(s);
    for (const auto &js : field<Json>(j, "starts")) {
        StartSummary s2;
        s2.start = field<int>(js, "start");
        s2.seed = field<std::uint64_t>(js, "seed");
        s2.warm = js.value("warm", false);
        s2.cost = field<double>(js, "cost");
        s2.objective = js.value("objective", s2.cost);
        s2.pi_me = field<double>(js, "pi_me");
        s2.sigma_me = field<double>(js, "sigma_me");
        s2.grad_norm = js.value("grad_norm", 0.0);
        s2.iterations = field<int>(js, "iterations");
        s2.converged = field<bool>(js, "converged");
        s2.stop_reason = js.value("stop_reason", std::string());
        r.starts.push_back(std::move(s2));
    }
    r.skipped_starts = j.value("skipped_starts", 0);
    r.wall_seconds = j.value("wall_seconds", 0.0);
    r.flags = j.value("flags", std::vector<std::string>{});
    return r;
}

Json to_json(const VerificationReport &r) {
    return Json{{"name", r.name},
                {"n", r.n},
                {"draws", r.draws},
                {"expected_pi_me", r.expected_pi_me},
                {"expected_sigma_me", r.expected_sigma_me},
                {"pi_me", r.pi_me},
                {"sigma_me", r.sigma_me},
                {"pi_residual", r.pi_residual},
                {"sigma_residual", r.sigma_residual},
                {"purity_residual", r.purity_residual},
                {"manifold_residual", r.manifold_residual},
                {"tolerance", r.tolerance},
                {"pass", r.pass},
                {"table_verdict", r.table_verdict}};
}

Json to_json(const KeyDemoTranscript &t) {
    return Json{{"seed", t.seed},
                {"shots", t.shots},
                {"observable", t.observable},
                {"parity_violations", t.parity_violations},
                {"plus_frequency", t.plus_frequency},
                {"max_single_deviation", t.max_single_deviation},
                {"max_pair_deviation", t.max_pair_deviation},
                {"key_agreements", t.key_agreements},
                {"lines", t.lines}};
}

Json to_json(const SymmetryDiagnostics &d) {
    return Json{{"pi_asymmetry", d.pi_asymmetry},
                {"count_cos_plus", d.count_cos_plus},
                {"count_cos_minus", d.count_cos_minus},
                {"half_pi_asymmetry", d.half_pi_asymmetry},
                {"rest_cos_mean", d.rest_cos_mean}};
}

Json to_json(const FrustrationSummary &s) {
    return Json{{"n", s.n},
                {"best_pi_me", s.best_pi_me},
                {"sigma_at_best", s.sigma_at_best},
                {"floor", s.floor},
                {"gap", s.gap},
                {"frustrated", s.frustrated},
                {"observed", s.observed},
                {"table_verdict", s.table_verdict}};
}

std::string histogram_csv(const AngleHistogram &h) {
    std::ostringstream os;
    os << "bin_left,bin_right,count\n";
    for (int b = 0; b < h.bins; ++b) {
        os << fmt_double(h.bin_left(b)) << ',' << fmt_double(h.bin_right(b)) << ','
           << h.counts[static_cast<std::size_t>(b)] << '\n';
    }
    return os.str();
}

std::string trajectory_csv(const RunRecord &r) {
    std::ostringstream os;
    os << "start,iter,cost,grad_norm\n";
    for (const auto &p : r.trajectory) {
        os << p.start << ',' << p.iter << ',' << fmt_double(p.cost) << ','
           << (std::isnan(p.grad_norm) ? std::string("nan") : fmt_double(p.grad_norm)) << '\n';
    }
    return os.str();
}

} // namespace mmes
