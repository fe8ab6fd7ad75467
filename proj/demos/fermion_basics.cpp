// Copyright 2026 The gaussdecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gaussian states on four and six qubits: sampling, testing, charts.

#include <cstdio>

#include "gaussdecomp.hpp"

using namespace gaussdecomp;

int main() {
    Rng rng(2026);
    const auto circuit = random_brickwork(6, 12, rng);
    const auto psi = run_circuit(circuit, 0);
    std::printf("brickwork output: Lambda residual %.2e, worst constraint %.2e over %zu pairs\n",
                lambda_residual_norm(psi), max_constraint_residual(psi).max_abs, max_constraint_residual(psi).count);

    // Keep the amplitudes at distance <= 2 from the largest one and rebuild the rest.
    const Label y = psi.argmax_label();
    const auto chart = restrict_to_chart(psi, y);
    const auto rebuilt = complete_amplitudes(chart);
    std::printf("chart around %u holds %zu of %zu amplitudes, rebuild error %.2e\n", y, chart.values.size(),
                psi.dimension(), std::sqrt(distance_squared(psi, rebuilt)));

    EvenParityState m(4);
    m.set(0, 1 / std::sqrt(2.0));
    m.set(15, 1 / std::sqrt(2.0));
    std::printf("|0000> + |1111>: Lambda residual %.3f, f(0, 15) = %.3f\n", lambda_residual_norm(m),
                constraint_f(m, {0, 15}).real());

    const auto haar = haar_random_even_state(6, 7);
    std::printf("Haar state on 6 qubits is %sGaussian\n", is_gaussian(haar) ? "" : "not ");
    return 0;
}
