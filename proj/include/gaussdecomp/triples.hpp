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

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussdecomp/constraints.hpp"
#include "gaussdecomp/matchgate.hpp"
#include "gaussdecomp/random.hpp"

namespace gaussdecomp {

namespace detail {

inline void require_disjoint_sorted(int b0, int b1, int c0, int c1) {
    if (!(b0 < b1) || !(c0 < c1)) throw std::invalid_argument("index pairs must be increasing");
    if (b0 == c0 || b0 == c1 || b1 == c0 || b1 == c1) throw std::invalid_argument("index pairs overlap");
}

inline void require_distinct(std::initializer_list<int> v) {
    std::vector<int> s(v);
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("indices must be distinct");
}

}  // namespace detail

/// Sign s_0 or s_1 in the anchored solve of a_[c0,c1].
inline int sign_s(int b0, int b1, int c0, int c1, int which) {
    detail::require_disjoint_sorted(b0, b1, c0, c1);
    if (which == 0) return ((b0 < c0 && c1 < b1) || (c0 < b0 && b1 < c1)) ? -1 : 1;
    if (which == 1) return (b1 < c0 || c1 < b0) ? -1 : 1;
    throw std::invalid_argument("sign_s selector must be 0 or 1");
}

/// Sign t_0, t_1 or t_2 of the weight-4 equation for [b_k, d0, d1, d2].
inline int sign_t(int bk, int d0, int d1, int d2, int which) {
    detail::require_distinct({bk, d0, d1, d2});
    if (!(d0 < d1 && d1 < d2)) throw std::invalid_argument("d indices must be increasing");
    switch (which) {
        case 0: return (d1 < bk && bk < d2) ? -1 : 1;
        case 1: return (bk < d0 || d2 < bk) ? -1 : 1;
        case 2: return (d0 < bk && bk < d1) ? -1 : 1;
        default: throw std::invalid_argument("sign_t selector must be 0, 1 or 2");
    }
}

inline Label pair_label(int n, int i, int j) { return detail::position_mask(n, i) | detail::position_mask(n, j); }

/// Residual of the reduced equation attached to a weight-4 label x = [p1,p2,p3,p4]:
/// a_[p1p2] a_[p3p4] - a_[p1p3] a_[p2p4] + a_[p1p4] a_[p2p3].
inline Complex reduced_residual(const EvenParityState& s, Label x) {
    const int n = s.qubits();
    const auto p = set_positions(x, n);
    if (p.size() != 4) throw std::invalid_argument("reduced equations are indexed by weight-4 labels");
    auto a = [&](int i, int j) { return s.amplitude(pair_label(n, p[i], p[j])); };
    return a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2);
}

struct ReducedResiduals {
    double max_w2 = 0.0;  // equations that fix a_[c0,c1]
    double max_w4 = 0.0;
    double max_w6 = 0.0;
    double max_all() const { return std::max({max_w2, max_w4, max_w6}); }
};

inline ReducedResiduals reduced_residuals(const EvenParityState& s, Label anchor) {
    ReducedResiduals r;
    for (Label x : enumerate_even_labels(s.qubits())) {
        if (hamming_weight(x) != 4) continue;
        const double v = std::abs(reduced_residual(s, x));
        switch (hamming_distance(x, anchor)) {
            case 2: r.max_w2 = std::max(r.max_w2, v); break;
            case 4: r.max_w4 = std::max(r.max_w4, v); break;
            default: r.max_w6 = std::max(r.max_w6, v); break;
        }
    }
    return r;
}

/// Weight-2 labels left free by an anchor: those sharing a position with it.
inline std::vector<Label> triple_free_labels(int n, Label anchor) {
    if (hamming_weight(anchor) != 2) throw std::invalid_argument("anchor must have weight 2");
    std::vector<Label> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const Label z = pair_label(n, i, j);
            if (z & anchor) out.push_back(z);
        }
    std::sort(out.begin(), out.end());
    return out;
}

inline constexpr double kTripleTol = 1e-10;

/// Weight <= 2 state with the C(n-2, 2) amplitudes disjoint from the anchor solved.
inline EvenParityState solve_triple_chart(int n, const std::map<Label, Complex>& free, Label anchor,
                                          double check_tol = kTripleTol) {
    detail::check_qubits(n);
    if (n < 4) throw std::invalid_argument("triples need n >= 4");
    const auto allowed = triple_free_labels(n, anchor);
    EvenParityState s(n);
    for (const auto& [z, v] : free) {
        if (z != 0 && !std::binary_search(allowed.begin(), allowed.end(), z)) {
            throw std::invalid_argument("label " + std::to_string(z) + " is not a free triple variable");
        }
        s.set(z, v);
    }
    const Complex ab = s.amplitude(anchor);
    if (std::abs(ab) <= kPivotTol) throw std::domain_error("anchor amplitude below pivot tolerance");
    const auto bp = set_positions(anchor, n);
    const int b0 = bp[0], b1 = bp[1];
    for (int c0 = 1; c0 <= n; ++c0) {
        for (int c1 = c0 + 1; c1 <= n; ++c1) {
            if (c0 == b0 || c0 == b1 || c1 == b0 || c1 == b1) continue;
            const Complex v = (static_cast<double>(sign_s(b0, b1, c0, c1, 0)) * s.amplitude(pair_label(n, std::min(b0, c0), std::max(b0, c0))) *
                                   s.amplitude(pair_label(n, std::min(b1, c1), std::max(b1, c1))) +
                               static_cast<double>(sign_s(b0, b1, c0, c1, 1)) * s.amplitude(pair_label(n, std::min(b0, c1), std::max(b0, c1))) *
                                   s.amplitude(pair_label(n, std::min(b1, c0), std::max(b1, c0)))) /
                              ab;
            s.set(pair_label(n, c0, c1), v);
        }
    }
    if (check_tol > 0) {
        const auto r = reduced_residuals(s, anchor);
        double scale = 1.0;
        for (const auto& a : s.dense()) scale = std::max(scale, std::norm(a));
        if (r.max_all() > check_tol * scale) {
            throw std::runtime_error("reduced system residual " + std::to_string(r.max_all()) + " exceeds tolerance");
        }
    }
    return s;
}

struct GaussianTriple {
    EvenParityState psi0, psi1, psi2;
    double alpha = 0.0;
    double beta = 0.0;

    double dependence_residual() const {
        EvenParityState r = psi0;
        r -= alpha * psi1;
        r -= beta * psi2;
        return r.norm();
    }
};

/// U|0>, U(sum a_y|y>)/alpha, U((1 - a_0)|0> - sum_{|y|=2} a_y|y>)/beta.
inline GaussianTriple build_triple(int n, const MatchgateCircuit& circuit, const std::map<Label, Complex>& free,
                                   Label anchor, double gaussian_tol = 1e-9) {
    if (circuit.n != n) throw std::invalid_argument("circuit qubit count mismatch");
    EvenParityState t1(n);
    if (anchor == 0) {
        // Degenerate chart with no weight-2 support: only a_0 is free.
        for (const auto& [z, v] : free) {
            if (z != 0) throw std::invalid_argument("anchor 0 admits only a_0");
            t1.set(0, v);
        }
    } else {
        t1 = solve_triple_chart(n, free, anchor);
    }
    EvenParityState t2(n);
    t2.set(0, 1.0 - t1.amplitude(0));
    for (std::size_t i = 1; i < t1.dimension(); ++i) t2[i] = -t1[i];
    const double alpha = t1.norm(), beta = t2.norm();
    if (alpha == 0.0 || beta == 0.0) throw std::domain_error("triple component vanishes");
    GaussianTriple out;
    out.alpha = alpha;
    out.beta = beta;
    out.psi0 = run_circuit(circuit, 0);
    out.psi1 = apply_circuit(circuit, t1.normalized());
    out.psi2 = apply_circuit(circuit, t2.normalized());
    for (const auto* s : {&out.psi0, &out.psi1, &out.psi2}) {
        const double lam = lambda_residual_norm(*s);
        if (lam > gaussian_tol) {
            throw std::domain_error("triple component is not Gaussian (residual " + std::to_string(lam) + ")");
        }
    }
    return out;
}

/// Default anchor: the largest-modulus weight-2 amplitude.
inline Label choose_anchor(const EvenParityState& s) {
    Label best = 0;
    double best_mod = 0.0;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const Label x = even_label(i);
        if (hamming_weight(x) == 2 && std::abs(s[i]) > best_mod) {
            best_mod = std::abs(s[i]);
            best = x;
        }
    }
    return best;
}

struct TripleSample {
    EvenParityState state;  // weight <= 2 solution
    Label anchor = 0;
};

inline TripleSample random_triple_solution(int n, Rng& rng) {
    const auto weight2 = [&] {
        std::vector<Label> v;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) v.push_back(pair_label(n, i, j));
        return v;
    }();
    for (;;) {
        const Label anchor = weight2[rng() % weight2.size()];
        std::map<Label, Complex> free{{0, complex_normal(rng)}};
        for (Label z : triple_free_labels(n, anchor)) free[z] = complex_normal(rng);
        if (std::abs(free[anchor]) < 0.1) continue;
        return {solve_triple_chart(n, free, anchor), anchor};
    }
}

struct DimensionReport {
    int n = 0;
    int complex_variables = 0;
    int equations = 0;
    int rank = 0;
    int dimension = 0;       // complex
    int real_dimension = 0;  // 2 x complex
    double gap = 0.0;        // sigma_rank / sigma_{rank+1}
    std::vector<double> singular_values;
};

/// Jacobian rank of the reduced system at one random solution.
inline DimensionReport triple_manifold_dimension(int n, std::uint64_t seed, double cut = 1e-8) {
    if (n < 4) throw std::invalid_argument("triple_manifold_dimension needs n >= 4");
    Rng rng(seed);
    const auto sample = random_triple_solution(n, rng);
    std::vector<Label> vars, eqs;
    for (Label x : enumerate_even_labels(n)) {
        if (hamming_weight(x) == 2) vars.push_back(x);
        if (hamming_weight(x) == 4) eqs.push_back(x);
    }
    Eigen::MatrixXcd J(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(vars.size()));
    const double h = 1e-5;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        EvenParityState plus = sample.state, minus = sample.state;
        plus.set(vars[j], plus.amplitude(vars[j]) + h);
        minus.set(vars[j], minus.amplitude(vars[j]) - h);
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (reduced_residual(plus, eqs[i]) - reduced_residual(minus, eqs[i])) / (2 * h);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
    const auto sv = svd.singularValues();
    DimensionReport rep;
    rep.n = n;
    rep.complex_variables = static_cast<int>(vars.size());
    rep.equations = static_cast<int>(eqs.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) rep.singular_values.push_back(sv[i]);
    const double smax = sv.size() ? sv[0] : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cut * smax) ++rank;
    rep.rank = rank;
    rep.dimension = rep.complex_variables - rank;
    rep.real_dimension = 2 * rep.dimension;
    if (rank > 0 && rank < sv.size()) {
        const double next = sv[rank];
        rep.gap = next > 0 ? sv[rank - 1] / next : std::numeric_limits<double>::infinity();
    } else {
        rep.gap = std::numeric_limits<double>::infinity();
    }
    return rep;
}

}  // namespace gaussdecomp
