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

#include "mmes/kernel.hpp"

namespace mmes {

GatherPlan::GatherPlan(const Bipartition &bipartition)
    : bp(bipartition), dim_a(bipartition.dim_a()), dim_b(bipartition.dim_complement()) {
    IndexSplit split(bp);
    index.resize(dim_a * dim_b);
    position.resize(dim_a * dim_b);
    for (Index a = 0; a < dim_a; ++a) {
        for (Index b = 0; b < dim_b; ++b) {
            const auto k = static_cast<std::uint32_t>(split.merge(a, b));
            index[a * dim_b + b] = k;
            position[k] = static_cast<std::uint32_t>(a * dim_b + b);
        }
    }
}

void compute_gram(std::span<const Complex> z, const GatherPlan &plan, GramWorkspace &ws) {
    const Index da = plan.dim_a;
    const Index db = plan.dim_b;
    ws.matrix.resize(da * db);
    ws.gram.resize(da * da);
    for (Index i = 0; i < da * db; ++i) {
        ws.matrix[i] = z[plan.index[i]];
    }
    // Upper triangle by explicit real arithmetic; the lower half is mirrored.
    for (Index a = 0; a < da; ++a) {
        const Complex *row_a = ws.matrix.data() + a * db;
        for (Index ap = a; ap < da; ++ap) {
            const Complex *row_ap = ws.matrix.data() + ap * db;
            double re = 0.0;
            double im = 0.0;
            for (Index b = 0; b < db; ++b) {
                const double xr = row_a[b].real(), xi = row_a[b].imag();
                const double yr = row_ap[b].real(), yi = row_ap[b].imag();
                re += xr * yr + xi * yi;
                im += xi * yr - xr * yi;
            }
            ws.gram[a * da + ap] = Complex(re, im);
            ws.gram[ap * da + a] = Complex(re, -im);
        }
    }
}

double gram_frobenius(std::span<const Complex> gram, Index dim) {
    double diag = 0.0;
    double off = 0.0;
    for (Index a = 0; a < dim; ++a) {
        diag += std::norm(gram[a * dim + a]);
        for (Index ap = a + 1; ap < dim; ++ap) {
            off += std::norm(gram[a * dim + ap]);
        }
    }
    return diag + 2.0 * off;
}

void accumulate_gram_product(const GatherPlan &plan, const GramWorkspace &ws, double weight,
                             std::span<Complex> out) {
    const Index da = plan.dim_a;
    const Index db = plan.dim_b;
    for (Index a = 0; a < da; ++a) {
        for (Index b = 0; b < db; ++b) {
            double re = 0.0;
            double im = 0.0;
            for (Index ap = 0; ap < da; ++ap) {
                const Complex c = ws.gram[a * da + ap];
                const Complex m = ws.matrix[ap * db + b];
                re += c.real() * m.real() - c.imag() * m.imag();
                im += c.real() * m.imag() + c.imag() * m.real();
            }
            out[plan.index[a * db + b]] += weight * Complex(re, im);
        }
    }
}

} // namespace mmes
