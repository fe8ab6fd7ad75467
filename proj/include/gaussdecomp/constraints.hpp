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
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaussdecomp/matchgate.hpp"
#include "gaussdecomp/random.hpp"
#include "gaussdecomp/state.hpp"

namespace gaussdecomp {

inline constexpr double kGaussianTol = 1e-10;
inline constexpr double kPivotTol = 1e-8;

/// Two even labels at Hamming distance >= 4.
struct ConstraintId {
    Label u = 0;
    Label v = 0;
    friend bool operator==(const ConstraintId&, const ConstraintId&) = default;
};

/// Norm of sum_k (c_k (x) c_k)|psi>|psi>.
///
/// The vector lives on odd (x) odd labels. Each output entry (x, y) gathers
/// the contributions of (x ^ e_m, y ^ e_m) through both Majoranas on qubit m.
inline double lambda_residual_norm(const EvenParityState& state) {
    const int n = state.qubits();
    const Label full = Label{1} << n;
    double acc = 0.0;
    std::vector<Label> odd;
    odd.reserve(full / 2);
    for (Label x = 0; x < full; ++x)
        if (!is_even(x)) odd.push_back(x);
    for (Label x : odd) {
        for (Label y : odd) {
            Complex out{};
            for (int m = 1; m <= n; ++m) {
                const Label mask = detail::position_mask(n, m);
                const Label xs = x ^ mask, ys = y ^ mask;
                const Complex ax = state[even_index(xs)];
                const Complex ay = state[even_index(ys)];
                if (ax == Complex{} || ay == Complex{}) continue;
                const auto ox = majorana_apply(2 * m - 1, xs, n);
                const auto oy = majorana_apply(2 * m - 1, ys, n);
                const auto ex = majorana_apply(2 * m, xs, n);
                const auto ey = majorana_apply(2 * m, ys, n);
                out += (ox.phase * oy.phase + ex.phase * ey.phase) * ax * ay;
            }
            acc += std::norm(out);
        }
    }
    return std::sqrt(acc);
}

inline void check_constraint(Label u, Label v, int n) {
    if (!is_even(u) || !is_even(v)) throw std::invalid_argument("constraint labels must be even weight");
    if (u >= (Label{1} << n) || v >= (Label{1} << n)) throw std::out_of_range("constraint label out of range");
    if (hamming_distance(u, v) < 4) {
        throw std::invalid_argument("constraint (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") has distance < 4 and is trivial");
    }
}

/// f(u, v) = a_u a_v - sum_{i>=2} (-1)^i a_{u^(k1,ki)} a_{v^(k1,ki)}.
inline Complex constraint_f(const EvenParityState& state, ConstraintId id) {
    const int n = state.qubits();
    check_constraint(id.u, id.v, n);
    const auto k = diff_positions(id.u, id.v, n);
    Complex acc = state.amplitude(id.u) * state.amplitude(id.v);
    const Label m1 = detail::position_mask(n, k[0]);
    for (std::size_t i = 1; i < k.size(); ++i) {
        const Label m = m1 | detail::position_mask(n, k[i]);
        const double sign = (i % 2 == 1) ? 1.0 : -1.0;  // (-1)^(i+1) with 0-based i
        acc -= sign * state.amplitude(id.u ^ m) * state.amplitude(id.v ^ m);
    }
    return acc;
}

/// All unordered even pairs u < v with d(u, v) >= 4.
inline std::vector<ConstraintId> all_constraints(int n) {
    std::vector<ConstraintId> out;
    const auto labels = enumerate_even_labels(n);
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (hamming_distance(labels[i], labels[j]) >= 4) out.push_back({labels[i], labels[j]});
    return out;
}

/// The family (y, w) with d(y, w) >= 4, ascending in w.
inline std::vector<ConstraintId> independent_constraints(int n, Label y) {
    detail::check_qubits(n);
    if (!is_even(y)) throw std::invalid_argument("favored label must be even weight");
    std::vector<ConstraintId> out;
    for (Label w : enumerate_even_labels(n))
        if (hamming_distance(y, w) >= 4) out.push_back({y, w});
    return out;
}

struct ConstraintReport {
    double max_abs = 0.0;
    ConstraintId worst{};
    std::size_t count = 0;
};

inline ConstraintReport max_constraint_residual(const EvenParityState& state) {
    const int n = state.qubits();
    ConstraintReport rep;
    const auto labels = enumerate_even_labels(n);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (hamming_distance(labels[i], labels[j]) < 4) continue;
            ++rep.count;
            const double r = std::abs(constraint_f(state, {labels[i], labels[j]}));
            if (r > rep.max_abs) {
                rep.max_abs = r;
                rep.worst = {labels[i], labels[j]};
            }
        }
    }
    return rep;
}

inline bool is_gaussian(const EvenParityState& state, double tol = kGaussianTol) {
    return lambda_residual_norm(state) <= tol;
}

// ---------------------------------------------------------------------------
// Free charts and completion.

/// Even labels within distance 2 of y: y first, then y ^ e_i ^ e_j ascending.
inline std::vector<Label> chart_labels(int n, Label y) {
    std::vector<Label> out{y};
    std::vector<Label> rest;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            rest.push_back(y ^ detail::position_mask(n, i) ^ detail::position_mask(n, j));
    std::sort(rest.begin(), rest.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

struct FreeChart {
    int n = 0;
    Label favored = 0;
    std::map<Label, Complex> values;  // missing entries read as zero

    Complex get(Label z) const {
        auto it = values.find(z);
        return it == values.end() ? Complex{} : it->second;
    }

    void validate(double pivot_tol = kPivotTol) const {
        detail::check_qubits(n);
        if (!is_even(favored)) throw std::invalid_argument("favored label must be even weight");
        if (favored >= (Label{1} << n)) throw std::out_of_range("favored label out of range");
        for (const auto& [z, _] : values) {
            if (z >= (Label{1} << n)) throw std::out_of_range("chart label " + std::to_string(z) + " out of range");
            if (!is_even(z)) throw std::invalid_argument("chart label " + std::to_string(z) + " has odd weight");
            if (hamming_distance(z, favored) > 2) {
                throw std::invalid_argument("chart label " + std::to_string(z) + " is farther than 2 from favored");
            }
        }
        if (std::abs(get(favored)) <= pivot_tol) {
            throw std::domain_error("chart pivot |a_y| below tolerance");
        }
    }
};

namespace detail {

struct CompletionTerm {
    std::uint32_t near;  // dense index of y ^ e_k1 ^ e_ki
    std::uint32_t far;   // dense index of w ^ e_k1 ^ e_ki
    double sign;
};

struct CompletionPlan {
    std::vector<std::uint32_t> targets;        // dense indices, solve order
    std::vector<std::uint32_t> offsets;        // into terms, size targets+1
    std::vector<CompletionTerm> terms;
};

inline std::shared_ptr<const CompletionPlan> build_completion_plan(int n, Label y) {
    auto plan = std::make_shared<CompletionPlan>();
    std::vector<Label> ws;
    for (Label w : enumerate_even_labels(n))
        if (hamming_distance(y, w) >= 4) ws.push_back(w);
    std::stable_sort(ws.begin(), ws.end(), [y](Label a, Label b) {
        const int da = hamming_distance(a, y), db = hamming_distance(b, y);
        return da != db ? da < db : a < b;
    });
    plan->offsets.push_back(0);
    for (Label w : ws) {
        const auto k = diff_positions(y, w, n);
        const Label m1 = position_mask(n, k[0]);
        for (std::size_t i = 1; i < k.size(); ++i) {
            const Label m = m1 | position_mask(n, k[i]);
            plan->terms.push_back({static_cast<std::uint32_t>(even_index(y ^ m)),
                                   static_cast<std::uint32_t>(even_index(w ^ m)),
                                   (i % 2 == 1) ? 1.0 : -1.0});
        }
        plan->targets.push_back(static_cast<std::uint32_t>(even_index(w)));
        plan->offsets.push_back(static_cast<std::uint32_t>(plan->terms.size()));
    }
    return plan;
}

inline std::shared_ptr<const CompletionPlan> completion_plan(int n, Label y) {
    static std::mutex mu;
    static std::map<std::pair<int, Label>, std::shared_ptr<const CompletionPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, y}];
    if (!slot) slot = build_completion_plan(n, y);
    return slot;
}

}  // namespace detail

/// Overwrites every amplitude at distance >= 4 from y by solving f(y, w) = 0.
inline void complete_in_place(EvenParityState& state, Label y, double pivot_tol = kPivotTol) {
    const Complex ay = state.amplitude(y);
    if (std::abs(ay) <= pivot_tol) throw std::domain_error("chart pivot |a_y| below tolerance");
    const auto plan = detail::completion_plan(state.qubits(), y);
    const Complex inv = 1.0 / ay;
    auto& a = state.dense();
    for (std::size_t t = 0; t < plan->targets.size(); ++t) {
        Complex acc{};
        for (std::uint32_t j = plan->offsets[t]; j < plan->offsets[t + 1]; ++j) {
            const auto& term = plan->terms[j];
            acc += term.sign * a[term.near] * a[term.far];
        }
        a[plan->targets[t]] = acc * inv;
    }
}

/// Unnormalized completion of a chart.
inline EvenParityState complete_amplitudes(const FreeChart& chart) {
    chart.validate();
    EvenParityState s(chart.n);
    for (const auto& [z, v] : chart.values) s.set(z, v);
    complete_in_place(s, chart.favored);
    return s;
}

inline FreeChart restrict_to_chart(const EvenParityState& state, Label y) {
    FreeChart c{state.qubits(), y, {}};
    for (Label z : chart_labels(state.qubits(), y)) c.values[z] = state.amplitude(z);
    return c;
}

enum class GaussianMethod { kCircuit, kChart };

inline EvenParityState random_gaussian(int n, std::uint64_t seed, GaussianMethod method = GaussianMethod::kCircuit) {
    detail::check_qubits(n);
    Rng rng(seed);
    if (method == GaussianMethod::kCircuit) {
        if (n == 1) return EvenParityState::basis(1, 0);
        return run_circuit(random_brickwork(n, 2 * n, rng), 0).normalized();
    }
    EvenParityState s(n);
    const auto labels = chart_labels(n, 0);
    do {
        for (Label z : labels) s.set(z, complex_normal(rng));
    } while (std::abs(s.amplitude(0)) <= kPivotTol);
    complete_in_place(s, 0);
    return s.normalized();
}

}  // namespace gaussdecomp
