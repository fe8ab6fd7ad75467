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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gaussdecomp/constraints.hpp"
#include "gaussdecomp/fidelity.hpp"

namespace gaussdecomp {

/// Delta_w from Delta_w = 2^n (2w - 1) Delta_{w-2}, Delta_2 = eta.
inline double delta_recursion(int n, int w, double eta) {
    if (w % 2 != 0) throw std::invalid_argument("delta_recursion needs even w");
    if (w < 2 || w > n) throw std::out_of_range("delta_recursion needs 2 <= w <= n");
    double d = eta;
    for (int v = 4; v <= w; v += 2) d *= std::ldexp(1.0, n) * (2 * v - 1);
    return d;
}

inline double delta_closed_form(int n, int w, double eta) {
    if (w % 2 != 0) throw std::invalid_argument("delta_closed_form needs even w");
    const double log2_pref = 0.5 * (n + 2) * w - n;
    const double gamma_ratio = std::exp(std::lgamma(0.5 * w + 0.75) - std::lgamma(0.75));
    return std::exp2(log2_pref) * gamma_ratio * eta / 3.0;
}

struct NetBound {
    double log2_total = 0.0;       // n^4 + 2n^2 + n + l n^2
    double log2_per_region = 0.0;  // 2n^2 + 1 - n^2 log2(eta), eta = 2^(-n^2 - l)
    double log2_eta = 0.0;
};

inline NetBound net_cardinality_bound(int n, int l) {
    const double n2 = static_cast<double>(n) * n;
    NetBound b;
    b.log2_total = n2 * n2 + 2 * n2 + n + l * n2;
    b.log2_eta = -n2 - l;
    b.log2_per_region = 2 * n2 + 1 - n2 * b.log2_eta;
    return b;
}

/// Amplitudes permuted by x -> x ^ mask, mask of even weight.
inline EvenParityState xor_relabel(const EvenParityState& s, Label mask) {
    if (!is_even(mask)) throw std::invalid_argument("relabel mask must be even weight");
    EvenParityState out(s.qubits());
    for (std::size_t i = 0; i < s.dimension(); ++i) out.set(even_label(i) ^ mask, s[i]);
    return out;
}

/// Random Gaussian whose largest amplitude sits at label 0 (region S_0).
inline EvenParityState random_gaussian_in_s0(int n, std::uint64_t seed) {
    const auto g = random_gaussian(n, seed);
    return xor_relabel(g, g.argmax_label());
}

struct PerturbationReport {
    int n = 0;
    double eta = 0.0;
    int trials = 0;
    double max_distance = 0.0;       // max 1-norm distance of completed states
    double max_ratio = 0.0;          // max distance / eta
    double lemma_bound = 0.0;        // 2^(n^2) eta
    std::vector<double> max_weight_deviation;  // index w/2, max |delta_x| over |x| = w
    std::vector<double> weight_bound;          // Delta_w
    bool within_bounds = true;
};

inline PerturbationReport perturbation_propagation_check(int n, double eta, int trials, std::uint64_t seed) {
    if (eta < 0) throw std::invalid_argument("eta must be non-negative");
    PerturbationReport rep;
    rep.n = n;
    rep.eta = eta;
    rep.trials = trials;
    rep.lemma_bound = std::exp2(static_cast<double>(n) * n) * eta;
    const int wmax = n - (n % 2);
    rep.max_weight_deviation.assign(static_cast<std::size_t>(wmax / 2 + 1), 0.0);
    rep.weight_bound.assign(rep.max_weight_deviation.size(), 0.0);
    for (int w = 2; w <= wmax; w += 2) rep.weight_bound[static_cast<std::size_t>(w / 2)] = delta_recursion(n, w, eta);
    Rng rng(seed);
    const auto labels = chart_labels(n, 0);
    for (int t = 0; t < trials; ++t) {
        // Reference recompleted from its own chart, so eta = 0 gives distance 0 exactly.
        auto s = random_gaussian_in_s0(n, derive_seed(seed, static_cast<std::uint64_t>(t)));
        complete_in_place(s, 0);
        EvenParityState p(n);
        for (Label z : labels) {
            const double r = eta * std::sqrt(uniform01(rng));
            const double th = 2 * M_PI * uniform01(rng);
            p.set(z, s.amplitude(z) + std::polar(r, th));
        }
        if (std::abs(p.amplitude(0)) <= kPivotTol) throw std::domain_error("perturbed chart lost its pivot");
        complete_in_place(p, 0);
        const double dist = l1_distance(s, p);
        rep.max_distance = std::max(rep.max_distance, dist);
        if (eta > 0) rep.max_ratio = std::max(rep.max_ratio, dist / eta);
        for (std::size_t i = 0; i < s.dimension(); ++i) {
            const int w = hamming_weight(even_label(i));
            auto& slot = rep.max_weight_deviation[static_cast<std::size_t>(w / 2)];
            slot = std::max(slot, std::abs(s[i] - p[i]));
        }
    }
    if (rep.max_distance > rep.lemma_bound) rep.within_bounds = false;
    for (std::size_t k = 1; k < rep.weight_bound.size(); ++k)
        if (rep.max_weight_deviation[k] > rep.weight_bound[k]) rep.within_bounds = false;
    return rep;
}

struct CoveringReport {
    int n = 0;
    double eta = 0.0;
    int samples = 0;
    std::size_t grid_points_used = 0;
    double max_distance = 0.0;  // 1-norm to the nearest grid state
    double lemma_bound = 0.0;
};

/// Snaps sampled S_0 charts onto an eta-grid and measures the covering distance.
inline CoveringReport covering_demo(int n, double eta, int samples, std::uint64_t seed) {
    CoveringReport rep;
    rep.n = n;
    rep.eta = eta;
    rep.samples = samples;
    rep.lemma_bound = std::exp2(static_cast<double>(n) * n) * eta;
    const double h = eta / std::sqrt(2.0);
    const auto labels = chart_labels(n, 0);
    std::set<std::vector<long long>> cells;
    for (int t = 0; t < samples; ++t) {
        const auto s = random_gaussian_in_s0(n, derive_seed(seed, static_cast<std::uint64_t>(t)));
        EvenParityState g(n);
        std::vector<long long> key;
        for (Label z : labels) {
            const Complex v = s.amplitude(z);
            const long long re = std::llround(v.real() / h), im = std::llround(v.imag() / h);
            key.push_back(re);
            key.push_back(im);
            g.set(z, {static_cast<double>(re) * h, static_cast<double>(im) * h});
        }
        cells.insert(key);
        complete_in_place(g, 0);
        rep.max_distance = std::max(rep.max_distance, l1_distance(s, g));
    }
    rep.grid_points_used = cells.size();
    return rep;
}

struct SurveyReport {
    int n = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;
    double max = 0.0;
    double bound = 0.0;
    bool bound_vacuous = false;
    bool within_bound = true;
    std::vector<int> histogram;  // 10 bins on [0, 1]
};

inline SurveyReport empirical_fidelity_survey(int n, int samples, std::uint64_t seed, int restarts = 8,
                                              int threads = 1) {
    if (n > 10) throw std::out_of_range("survey supports n <= 10");
    SurveyReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.seed = seed;
    rep.bound = fidelity_upper_bound(n, 1.0);
    rep.bound_vacuous = rep.bound >= 1.0;
    rep.values.assign(static_cast<std::size_t>(samples), 0.0);
    parallel_for(rep.values.size(), threads, [&](std::size_t i) {
        const auto psi = haar_random_even_state(n, derive_seed(seed, i));
        FidelityOptions opt;
        opt.restarts = restarts;
        opt.seed = derive_seed(seed ^ 0x5bd1e995ULL, i);
        rep.values[i] = gaussian_fidelity(psi, opt).value;
    });
    rep.histogram.assign(10, 0);
    for (double v : rep.values) {
        rep.max = std::max(rep.max, v);
        ++rep.histogram[static_cast<std::size_t>(std::clamp(static_cast<int>(v * 10), 0, 9))];
    }
    rep.within_bound = rep.max <= std::min(1.0, rep.bound) + 1e-12;
    return rep;
}

}  // namespace gaussdecomp
