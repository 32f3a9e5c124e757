# Copyright 2026 The mmes Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Multipartite entanglement potential of qubit states."""

import json as _json

from ._core import (
    Error,
    __version__,
    cost,
    cosine_histogram,
    fd_check,
    grad_potential,
    pauli_expectation,
    potential_via_delta,
    purity,
    reference_state,
)
from . import _core


def potential(amplitudes, renormalize=False, threads=1):
    """Purity report over all balanced bipartitions, as a dict."""
    return _json.loads(_core._potential_json(amplitudes, renormalize, threads))


def minimize(n, param="phases", algorithm="quasi-newton", starts=10, lam=0.0, seed=1,
             max_iters=2000, penalty="variance", threads=1):
    """Multistart minimization; returns the run record as a dict."""
    return _json.loads(_core._minimize_json(n, param, algorithm, starts, lam, seed,
                                            max_iters, penalty, threads))


def catalog():
    return _json.loads(_core._catalog_json())


def verify(name, draws=100):
    return _json.loads(_core._verify_json(name, draws))


def key_demo(seed=1, shots=10000):
    return _json.loads(_core._key_demo_json(seed, shots))


__all__ = [
    "Error", "__version__", "catalog", "cost", "cosine_histogram", "fd_check", "grad_potential",
    "key_demo", "minimize", "pauli_expectation", "potential", "potential_via_delta", "purity",
    "reference_state", "verify",
]
