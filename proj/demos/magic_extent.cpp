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

// Fidelity, extent and rank of a few magic states.

#include <cstdio>

#include "gaussdecomp.hpp"

using namespace gaussdecomp;

int main() {
    for (double alpha : {0.7071067811865476, 0.8, 0.9, 0.99}) {
        const auto psi = magic_state(MagicKind::kMalpha, alpha).state;
        const auto fid = gaussian_fidelity(psi, FidelityOptions{10, 1});
        const auto ext = extent4_via_extreme_points(psi, CircuitOptions{.restarts = 8, .seed = 1});
        std::printf("alpha %.4f  fidelity %.6f  1/F %.6f  extent %.6f  (primal %zu terms, gap %.1e)\n", alpha,
                    fid.value, 1 / fid.value, ext.value, ext.primal.terms.size(), ext.gap);
    }

    const auto m = magic_state(MagicKind::kM).state;
    const auto mult = multiplicativity_check({m, m}, CircuitOptions{.restarts = 8, .seed = 2});
    std::printf("extent of |M>|M>: dual %.6f primal %.6f\n", mult.dual_value, mult.primal_value);

    RankSearchConfig cfg;
    cfg.iterations = 20000;
    cfg.restarts = 4;
    cfg.seed = 3;
    const auto tilde = magic_power(MagicKind::kMtilde, 2);
    for (int k = 1; k <= 3; ++k) {
        cfg.terms = k;
        const auto r = anneal_decomposition(tilde, cfg);
        std::printf("Mtilde x Mtilde with %d terms: loss %.3e\n", k, r.best.loss);
    }
    return 0;
}
