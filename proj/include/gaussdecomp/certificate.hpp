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
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gaussdecomp/bits.hpp"
#include "gaussdecomp/random.hpp"

namespace gaussdecomp {

/// Smallest eigenvalue of a symmetric operator by Lanczos with full reorthogonalization.
inline double lanczos_min_eigenvalue(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                                     Eigen::Index dim, int steps, std::uint64_t seed = 1) {
    steps = static_cast<int>(std::min<Eigen::Index>(steps, dim));
    Rng rng(seed);
    Eigen::MatrixXd V(dim, steps + 1);
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = standard_normal(rng);
    V.col(0) = v.normalized();
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(dim);
    int m = 0;
    for (int j = 0; j < steps; ++j) {
        apply(V.col(j), w);
        const double a = V.col(j).dot(w);
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) w -= V.col(i).dot(w) * V.col(i);
        const double b = w.norm();
        m = j + 1;
        if (b < 1e-12) break;
        beta.push_back(b);
        V.col(j + 1) = w / b;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    return es.eigenvalues()[0];
}

/// Quadratic form Q = C + I - sum_i alpha_i A_i for the overlap with (|0>+|15>)^(x)k.
///
/// The form acts on real amplitude vectors over the even labels of 4k qubits.
/// Entries are integers; off-diagonal entries are stored once per unordered pair.
struct PsdCertificate {
    int k = 0;
    int n = 0;
    std::vector<Label> s_labels;
    std::vector<std::tuple<Label, Label, int>> constraints;  // (x, x', alpha)
    std::map<std::pair<Label, Label>, int> offdiag;
    std::vector<std::vector<Label>> blocks;
    std::vector<std::vector<double>> block_eigenvalues;
    double min_eigenvalue = 0.0;
    double global_min_eigenvalue = 0.0;  // from the full matrix
    int rounds = 0;
    bool blocks_rank_one = false;

    int diagonal(Label x) const { return std::binary_search(s_labels.begin(), s_labels.end(), x) ? 0 : 1; }

    int entry(Label x, Label y) const {
        if (x == y) return diagonal(x);
        auto it = offdiag.find({std::min(x, y), std::max(x, y)});
        return it == offdiag.end() ? 0 : it->second;
    }

    /// y = Q x over the dense even-sector index.
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        y.resize(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = diagonal(even_label(static_cast<std::size_t>(i))) * x[i];
        for (const auto& [pq, v] : offdiag) {
            const auto i = static_cast<Eigen::Index>(even_index(pq.first));
            const auto j = static_cast<Eigen::Index>(even_index(pq.second));
            y[i] += v * x[j];
            y[j] += v * x[i];
        }
    }

    Eigen::MatrixXd dense() const {
        const Eigen::Index dim = Eigen::Index{1} << (n - 1);
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) q(i, i) = diagonal(even_label(static_cast<std::size_t>(i)));
        for (const auto& [pq, v] : offdiag) {
            const auto i = static_cast<Eigen::Index>(even_index(pq.first));
            const auto j = static_cast<Eigen::Index>(even_index(pq.second));
            q(i, j) = q(j, i) = v;
        }
        return q;
    }
};

/// Labels made of all-zero or all-one 4-bit blocks, ascending.
inline std::vector<Label> extension_labels(int k) {
    std::vector<Label> out;
    for (Label x = 0; x < (Label{1} << k); ++x) {
        Label s = 0;
        for (int b = 0; b < k; ++b)
            if (x & (Label{1} << b)) s |= Label{0xF} << (4 * b);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Terms (p, q, coefficient) of f(u, v) as a quadratic form.
inline std::vector<std::tuple<Label, Label, int>> constraint_terms(Label u, Label v, int n) {
    const auto k = diff_positions(u, v, n);
    std::vector<std::tuple<Label, Label, int>> out{{u, v, 1}};
    const Label m1 = position_mask(n, k[0]);
    for (std::size_t i = 1; i < k.size(); ++i) {
        const Label m = m1 | position_mask(n, k[i]);
        out.emplace_back(u ^ m, v ^ m, (i % 2 == 1) ? -1 : 1);  // -(-1)^i, 1-based i
    }
    return out;
}

inline void impose(PsdCertificate& c, Label x, Label y, int alpha) {
    if (hamming_distance(x, y) < 4) {
        throw std::logic_error("certificate needs a constraint at distance < 4");
    }
    c.constraints.emplace_back(x, y, alpha);
    for (const auto& [p, q, coeff] : constraint_terms(x, y, c.n)) {
        const int delta = -alpha * coeff / 2;
        auto key = std::make_pair(std::min(p, q), std::max(p, q));
        int& slot = c.offdiag[key];
        slot += delta;
        if (slot == 0) c.offdiag.erase(key);
    }
}

inline std::vector<std::vector<Label>> offdiag_components(const PsdCertificate& c) {
    std::map<Label, std::vector<Label>> adj;
    for (const auto& [pq, v] : c.offdiag) {
        adj[pq.first].push_back(pq.second);
        adj[pq.second].push_back(pq.first);
    }
    std::map<Label, bool> seen;
    std::vector<std::vector<Label>> comps;
    for (const auto& [start, _] : adj) {
        if (seen[start]) continue;
        std::vector<Label> comp;
        std::queue<Label> q;
        q.push(start);
        seen[start] = true;
        while (!q.empty()) {
            const Label x = q.front();
            q.pop();
            comp.push_back(x);
            for (Label y : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    q.push(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

/// Signs v with Q[x,y] = v_x v_y on the nonzero entries of a block; empty if inconsistent.
inline std::map<Label, int> block_signs(const PsdCertificate& c, const std::vector<Label>& block) {
    std::map<Label, int> v;
    v[block.front()] = 1;
    std::queue<Label> q;
    q.push(block.front());
    while (!q.empty()) {
        const Label x = q.front();
        q.pop();
        for (Label y : block) {
            if (y == x) continue;
            const int e = c.entry(x, y);
            if (e == 0) continue;
            if (e != 1 && e != -1) return {};
            const int want = e * v[x];
            auto it = v.find(y);
            if (it == v.end()) {
                v[y] = want;
                q.push(y);
            } else if (it->second != want) {
                return {};
            }
        }
    }
    return v;
}

}  // namespace detail

/// Assembles the certificate for k copies and checks its spectrum.
inline PsdCertificate build_m4_certificate(int k) {
    if (k < 1 || k > 3) throw std::out_of_range("certificate supports 1 <= k <= 3");
    PsdCertificate c;
    c.k = k;
    c.n = 4 * k;
    c.s_labels = extension_labels(k);
    // C[S] is all -1; imposing f(s, t) at alpha = -2 cancels the off-diagonal part.
    for (std::size_t i = 0; i < c.s_labels.size(); ++i)
        for (std::size_t j = i + 1; j < c.s_labels.size(); ++j) {
            c.offdiag[{c.s_labels[i], c.s_labels[j]}] -= 1;
            detail::impose(c, c.s_labels[i], c.s_labels[j], -2);
        }
    for (auto it = c.offdiag.begin(); it != c.offdiag.end();) it = it->second == 0 ? c.offdiag.erase(it) : std::next(it);

    const int max_rounds = k + 2;
    for (int round = 1; round <= max_rounds; ++round) {
        std::vector<std::tuple<Label, Label, int>> pending;
        for (const auto& block : detail::offdiag_components(c)) {
            const auto v = detail::block_signs(c, block);
            if (v.empty()) throw std::logic_error("certificate block has inconsistent signs");
            for (std::size_t i = 0; i < block.size(); ++i)
                for (std::size_t j = i + 1; j < block.size(); ++j)
                    if (c.entry(block[i], block[j]) == 0)
                        pending.emplace_back(block[i], block[j], -2 * v.at(block[i]) * v.at(block[j]));
        }
        if (pending.empty()) break;
        c.rounds = round;
        for (const auto& [x, y, a] : pending) detail::impose(c, x, y, a);
    }

    c.blocks = detail::offdiag_components(c);
    c.blocks_rank_one = true;
    double min_eig = c.s_labels.empty() ? 1.0 : 0.0;
    for (const auto& block : c.blocks) {
        const auto m = static_cast<Eigen::Index>(block.size());
        Eigen::MatrixXd q(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) q(i, j) = c.entry(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
        std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
        min_eig = std::min(min_eig, ev.front());
        int nonzero = 0;
        for (double e : ev)
            if (std::abs(e) > 1e-9) ++nonzero;
        if (nonzero != 1 || std::abs(ev.back() - static_cast<double>(m)) > 1e-9) c.blocks_rank_one = false;
        c.block_eigenvalues.push_back(std::move(ev));
    }
    c.min_eigenvalue = min_eig;
    const Eigen::Index dim = Eigen::Index{1} << (c.n - 1);
    if (k <= 2) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.dense(), Eigen::EigenvaluesOnly);
        c.global_min_eigenvalue = es.eigenvalues()[0];
    } else {
        c.global_min_eigenvalue = lanczos_min_eigenvalue(
            [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { c.apply(x, y); }, dim, 300);
    }
    return c;
}

}  // namespace gaussdecomp
