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

// Python bindings. Structured results cross the boundary as JSON text and are
// decoded in the package's __init__.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmes/analysis.hpp"
#include "mmes/catalog.hpp"
#include "mmes/errors.hpp"
#include "mmes/gradients.hpp"
#include "mmes/io.hpp"
#include "mmes/optimize.hpp"
#include "mmes/potential.hpp"

namespace py = pybind11;
using namespace mmes;

namespace {

PureState make_state(const std::vector<Complex> &amps, bool renormalize) {
    int n = 0;
    while ((std::size_t{1} << n) < amps.size()) {
        ++n;
    }
    return PureState(n, amps, renormalize);
}

std::vector<Complex> amplitudes_of(const PureState &s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multipartite entanglement potential: native core";
    m.attr("__version__") = std::string(kVersion);

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
        }
    });

    m.def(
        "purity",
        [](const std::vector<Complex> &amps, Mask mask, bool renormalize) {
            const PureState s = make_state(amps, renormalize);
            return purity(s, Bipartition(s.n(), mask));
        },
        py::arg("amplitudes"), py::arg("mask"), py::arg("renormalize") = false);

    m.def(
        "_potential_json",
        [](const std::vector<Complex> &amps, bool renormalize, int threads) {
            return to_json(potential_me(make_state(amps, renormalize), threads)).dump();
        },
        py::arg("amplitudes"), py::arg("renormalize") = false, py::arg("threads") = 1);

    m.def(
        "potential_via_delta",
        [](const std::vector<Complex> &amps, int max_qubits) {
            return potential_via_delta(make_state(amps, false), max_qubits);
        },
        py::arg("amplitudes"), py::arg("max_qubits") = kDeltaPathDefaultCap);

    m.def(
        "cost", [](const std::vector<Complex> &amps, double lambda) { return cost(make_state(amps, false), lambda); },
        py::arg("amplitudes"), py::arg("lam"));

    m.def(
        "grad_potential",
        [](const std::vector<double> &params, int n, const std::string &param, double lambda) {
            return grad_potential(params, Parametrization{parse_param_kind(param), n}, lambda);
        },
        py::arg("params"), py::arg("n"), py::arg("param") = "phases", py::arg("lam") = 0.0);

    m.def(
        "fd_check",
        [](const std::vector<double> &params, int n, const std::string &param, double lambda, double h) {
            return fd_check(params, Parametrization{parse_param_kind(param), n}, lambda, h);
        },
        py::arg("params"), py::arg("n"), py::arg("param") = "phases", py::arg("lam") = 0.0, py::arg("h") = 1e-5);

    m.def(
        "_minimize_json",
        [](int n, const std::string &param, const std::string &algorithm, int starts, double lambda,
           std::uint64_t seed, int max_iters, const std::string &penalty, int threads) {
            OptimizerConfig c;
            c.n = n;
            c.param = parse_param_kind(param);
            c.algorithm = parse_algorithm(algorithm);
            c.starts = starts;
            c.lambda = lambda;
            c.seed = seed;
            c.max_iters = max_iters;
            c.penalty = parse_penalty(penalty);
            c.threads = threads;
            RunRecord r;
            {
                py::gil_scoped_release release;
                r = minimize(c);
            }
            return to_json(r).dump();
        },
        py::arg("n"), py::arg("param") = "phases", py::arg("algorithm") = "quasi-newton", py::arg("starts") = 10,
        py::arg("lam") = 0.0, py::arg("seed") = 1, py::arg("max_iters") = 2000, py::arg("penalty") = "variance",
        py::arg("threads") = 1);

    m.def(
        "reference_state",
        [](const std::string &name, const std::vector<double> &params, int option) {
            return amplitudes_of(make_reference(name, params, option));
        },
        py::arg("name"), py::arg("params") = std::vector<double>{}, py::arg("option") = -1);

    m.def("_catalog_json", [] {
        Json arr = Json::array();
        for (const auto &r : reference_catalog()) {
            arr.push_back({{"name", r.name},
                           {"n", r.n},
                           {"free_params", r.free_params},
                           {"pi_me", r.pi_me},
                           {"sigma_me", r.sigma_me},
                           {"source", r.source},
                           {"description", r.description}});
        }
        return arr.dump();
    });

    m.def(
        "_verify_json", [](const std::string &name, int draws) { return to_json(verify_table(name, draws)).dump(); },
        py::arg("name"), py::arg("draws") = 100);

    m.def(
        "pauli_expectation",
        [](const std::vector<Complex> &amps, const std::string &pauli) {
            return pauli_expectation(make_state(amps, false), PauliString(pauli));
        },
        py::arg("amplitudes"), py::arg("pauli"));

    m.def(
        "cosine_histogram",
        [](const std::vector<double> &phases, int bins) {
            const AngleHistogram h = cosine_histogram(phases, bins);
            return py::make_tuple(h.counts, h.total);
        },
        py::arg("phases"), py::arg("bins") = kDefaultBins);

    m.def(
        "_key_demo_json", [](std::uint64_t seed, int shots) { return to_json(key_demo(seed, shots)).dump(); },
        py::arg("seed") = 1, py::arg("shots") = 10000);
}
