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
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussdecomp/constraints.hpp"
#include "gaussdecomp/fidelity.hpp"
#include "gaussdecomp/matchgate.hpp"
#include "gaussdecomp/optimize.hpp"
#include "gaussdecomp/parallel.hpp"

namespace gaussdecomp {

struct DecompositionTerm {
    Complex coefficient;
    EvenParityState state;
};

struct Decomposition {
    EvenParityState target;
    std::vector<DecompositionTerm> terms;
    double loss = 0.0;
    double extent_value = 0.0;

    EvenParityState sum() const {
        EvenParityState acc(target.qubits());
        for (const auto& t : terms) acc += t.coefficient * t.state;
        return acc;
    }

    double l1_norm() const {
        double acc = 0.0;
        for (const auto& t : terms) acc += std::abs(t.coefficient);
        return acc;
    }

    /// Recomputes loss and extent_value from the terms.
    void refresh() {
        loss = distance_squared(target, sum());
        const double l1 = l1_norm();
        extent_value = l1 * l1;
    }
};

inline constexpr double kExactLoss = 1e-9;

/// (sum |c_i|)^2 of an exact decomposition.
inline double extent_upper(const Decomposition& d) {
    if (d.loss > kExactLoss) {
        throw std::domain_error("decomposition loss " + std::to_string(d.loss) + " is not exact");
    }
    return d.l1_norm() * d.l1_norm();
}

/// (|0> + |15>)^(x)k, the unnormalized extreme witness.
inline EvenParityState m4_witness(int copies = 1) {
    EvenParityState m(4);
    m.set(0, 1.0);
    m.set(15, 1.0);
    return kron_power(m, copies);
}

struct LowerBound {
    double value = 0.0;
    FidelityResult fidelity;
};

inline LowerBound extent_lower_via_fidelity(const EvenParityState& target, const FidelityOptions& opt = {}) {
    LowerBound out;
    out.fidelity = gaussian_fidelity(target, opt);
    out.value = 1.0 / out.fidelity.value;
    return out;
}

struct DualWitness {
    EvenParityState y;
    double fidelity_estimate = 0.0;   // ||y||^2 F_G(y / ||y||)
    double feasibility_margin = 0.0;  // 1 - sqrt(fidelity_estimate)
    double objective = 0.0;           // Re <target|y>, when a target is given
    bool feasible = false;
    EvenParityState attaining;        // Gaussian attaining the estimate
};

inline constexpr double kFeasibilityTol = 1e-7;

inline DualWitness dual_feasibility(const EvenParityState& y, const FidelityOptions& opt = {},
                                    double tol = kFeasibilityTol) {
    const double nrm2 = y.norm_squared();
    if (nrm2 == 0.0) throw std::domain_error("dual witness is the zero vector");
    const auto fid = gaussian_fidelity(y, opt);
    DualWitness w;
    w.y = y;
    w.fidelity_estimate = nrm2 * fid.value;
    w.feasibility_margin = 1.0 - std::sqrt(w.fidelity_estimate);
    w.feasible = w.fidelity_estimate <= 1.0 + tol;
    w.attaining = fid.witness;
    return w;
}

struct CircuitOptions {
    int restarts = 20;
    std::uint64_t seed = 0;
    int threads = 1;
    int depth = 0;  // 0 means 2n
    BfgsOptions bfgs{};
};

struct CircuitOverlap {
    double value = 0.0;  // |<target|U input>|^2
    MatchgateCircuit circuit;
    std::vector<double> restart_values;
};

/// Maximizes |<target|U input>|^2 over brickwork matchgate circuits U.
inline CircuitOverlap maximize_circuit_overlap(const EvenParityState& target, const EvenParityState& input,
                                               const CircuitOptions& opt) {
    target.check_same(input);
    const int n = target.qubits();
    const int depth = opt.depth > 0 ? opt.depth : 2 * n;
    const int dim = brickwork_gate_count(n, depth) * kMatchgateParams;
    std::vector<std::pair<double, Eigen::VectorXd>> runs(static_cast<std::size_t>(opt.restarts));
    parallel_for(runs.size(), opt.threads, [&](std::size_t r) {
        Rng rng(derive_seed(opt.seed, r));
        Eigen::VectorXd x(dim);
        if (r == 0) {
            x.setZero();
        } else {
            for (int i = 0; i < dim; ++i) x[i] = 2 * std::numbers::pi * uniform01(rng);
        }
        Objective f = [&](const Eigen::VectorXd& p) {
            const auto u = brickwork_from_params(n, depth, std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
            return -std::norm(overlap(target, apply_circuit(u, input)));
        };
        const auto res = bfgs_minimize(f, x, opt.bfgs);
        runs[r] = {-res.value, res.x};
    });
    CircuitOverlap out;
    std::size_t best = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        out.restart_values.push_back(runs[r].first);
        if (runs[r].first > runs[best].first) best = r;
    }
    out.value = runs[best].first;
    const auto& p = runs[best].second;
    out.circuit = brickwork_from_params(n, depth, std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
    return out;
}

/// Exact expansion target = sum_x <U x|target> U|x> in the frame of a matchgate circuit.
inline Decomposition frame_decomposition(const EvenParityState& target, const MatchgateCircuit& u) {
    Decomposition d;
    d.target = target;
    for (std::size_t i = 0; i < target.dimension(); ++i) {
        auto s = run_circuit(u, even_label(i));
        const Complex c = overlap(s, target);
        if (std::abs(c) > 1e-14) d.terms.push_back({c, std::move(s)});
    }
    d.refresh();
    return d;
}

struct Extent4Result {
    double value = 0.0;  // dual estimate (Re <target|y>)^2 at the best extreme witness
    DualWitness witness;
    MatchgateCircuit circuit;
    Decomposition primal;
    double gap = 0.0;    // primal extent_value - value
};

/// Extent of a 4-qubit state from the extreme witnesses U(|0> + |15>).
inline Extent4Result extent4_via_extreme_points(const EvenParityState& target, const CircuitOptions& opt = {},
                                                const FidelityOptions& feas = {}) {
    if (target.qubits() != 4) throw std::invalid_argument("extent4 needs a 4-qubit target");
    const EvenParityState psi = target.normalized();
    const auto best = maximize_circuit_overlap(psi, m4_witness(), opt);
    Extent4Result out;
    out.circuit = best.circuit;
    auto y = apply_circuit(best.circuit, m4_witness());
    const Complex ov = overlap(psi, y);
    if (std::abs(ov) > 0) y *= std::abs(ov) / ov;  // make <psi|y> real and positive
    out.witness = dual_feasibility(y, feas);
    out.witness.objective = overlap(psi, y).real();
    out.value = out.witness.objective * out.witness.objective;

    std::vector<Decomposition> candidates{frame_decomposition(psi, best.circuit),
                                          frame_decomposition(psi, MatchgateCircuit{4, {}})};
    if (lambda_residual_norm(psi) <= kGaussianTol) {
        Decomposition one;
        one.target = psi;
        one.terms.push_back({1.0, psi});
        one.refresh();
        candidates.push_back(one);
    }
    out.primal = candidates.front();
    for (const auto& c : candidates)
        if (c.loss <= kExactLoss && c.extent_value < out.primal.extent_value) out.primal = c;
    out.gap = out.primal.extent_value - out.value;
    return out;
}

struct MultiplicativityReport {
    std::vector<double> single_values;
    double dual_value = 0.0;    // (Re <(x)psi|(x)y>)^2
    double primal_value = 0.0;  // extent value of the product decomposition
    double product_of_singles = 1.0;
    double gap = 0.0;
    DualWitness tensor_witness;
    Decomposition product_decomposition;
    bool feasible = false;
    bool agrees = false;
};

inline Decomposition kron_decomposition(const Decomposition& a, const Decomposition& b) {
    Decomposition d;
    d.target = kron(a.target, b.target);
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) d.terms.push_back({ta.coefficient * tb.coefficient, kron(ta.state, tb.state)});
    d.refresh();
    return d;
}

inline MultiplicativityReport multiplicativity_check(const std::vector<EvenParityState>& targets,
                                                     const CircuitOptions& opt = {},
                                                     const FidelityOptions& feas = {}, double agree_tol = 1e-4,
                                                     double feasible_tol = 1e-6) {
    if (targets.empty()) throw std::invalid_argument("multiplicativity_check needs targets");
    MultiplicativityReport rep;
    EvenParityState psi, y;
    Decomposition prod;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        CircuitOptions o = opt;
        o.seed = derive_seed(opt.seed, i);
        const auto r = extent4_via_extreme_points(targets[i], o, feas);
        rep.single_values.push_back(r.value);
        rep.product_of_singles *= r.value;
        const auto t = targets[i].normalized();
        if (i == 0) {
            psi = t;
            y = r.witness.y;
            prod = r.primal;
        } else {
            psi = kron(psi, t);
            y = kron(y, r.witness.y);
            prod = kron_decomposition(prod, r.primal);
        }
    }
    rep.tensor_witness = dual_feasibility(y, feas, feasible_tol);
    rep.tensor_witness.objective = overlap(psi, y).real();
    rep.dual_value = rep.tensor_witness.objective * rep.tensor_witness.objective;
    rep.product_decomposition = prod;
    rep.primal_value = prod.extent_value;
    rep.gap = rep.primal_value - rep.dual_value;
    rep.feasible = rep.tensor_witness.feasible;
    rep.agrees = std::abs(rep.gap) <= agree_tol && prod.loss <= kExactLoss;
    return rep;
}

struct OverlapBoundReport {
    int k = 0;
    double max_overlap = 0.0;  // max_s |<(|0>+|15>)^(x)k | s>|^2
    bool within_bound = false;
    EvenParityState witness;
};

inline OverlapBoundReport m4_overlap_bound_check(int k, const FidelityOptions& opt = {}, double tol = 1e-6) {
    if (k < 1 || k > 3) throw std::out_of_range("overlap check supports 1 <= k <= 3");
    const auto y = m4_witness(k);
    const auto fid = gaussian_fidelity(y.normalized(), opt);
    OverlapBoundReport rep;
    rep.k = k;
    rep.max_overlap = y.norm_squared() * fid.value;
    rep.within_bound = rep.max_overlap <= 1.0 + tol;
    rep.witness = fid.witness;
    return rep;
}

struct SpanReport {
    int n = 0;
    int attaining_found = 0;
    int vectors = 0;
    int rank = 0;
    int full_dimension = 0;
    bool spans = false;  // necessary condition for an extreme witness
    double best_overlap = 0.0;
};

/// Rank of span(A_y and Abar_y) over attaining Gaussians found by restarts.
///
/// Restart r optimizes U|x_r> with x_r cycling over the even labels, so
/// s = U X_S|0> and its pair excitations are U|x_r ^ e_ij>.
inline SpanReport extreme_witness_span_test(const EvenParityState& y, const CircuitOptions& opt = {},
                                            double attain_tol = 1e-6) {
    const int n = y.qubits();
    SpanReport rep;
    rep.n = n;
    rep.full_dimension = static_cast<int>(y.dimension());
    std::vector<Eigen::VectorXcd> cols;
    auto push = [&](const EvenParityState& v) {
        cols.emplace_back(Eigen::Map<const Eigen::VectorXcd>(v.dense().data(), static_cast<Eigen::Index>(v.dimension())));
    };
    for (int r = 0; r < opt.restarts; ++r) {
        const Label x = even_label(static_cast<std::size_t>(r) % y.dimension());
        CircuitOptions o = opt;
        o.restarts = 1;
        o.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(r));
        const auto best = maximize_circuit_overlap(y, EvenParityState::basis(n, x), o);
        rep.best_overlap = std::max(rep.best_overlap, std::sqrt(best.value));
        if (std::sqrt(best.value) < 1.0 - attain_tol) continue;
        ++rep.attaining_found;
        push(run_circuit(best.circuit, x));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) push(run_circuit(best.circuit, flip_bits(x, n, {i, j})));
    }
    rep.vectors = static_cast<int>(cols.size());
    if (!cols.empty()) {
        Eigen::MatrixXcd m(static_cast<Eigen::Index>(y.dimension()), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        const auto sv = svd.singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-8 * sv[0]) ++rep.rank;
    }
    rep.spans = rep.rank == rep.full_dimension;
    return rep;
}

}  // namespace gaussdecomp
