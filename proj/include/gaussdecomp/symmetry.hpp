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

// Symmetry-restricted decompositions of two copies of the 4-qubit magic state.
//
// The constraint grid below lives on the 64 even labels of 8 qubits whose
// bits at positions 3..6 have even weight (mask 60). Body cell (r, c) holds
// the label r ^ c.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussdecomp/rank.hpp"

namespace gaussdecomp {

/// Masks of O_j = Z_{4j-1} Z_{4j} for j = 1..n/4.
inline std::vector<Label> block_symmetry_masks(int n) {
    if (n % 4 != 0) throw std::invalid_argument("block symmetry needs a multiple of 4 qubits");
    std::vector<Label> masks;
    for (int j = 1; j <= n / 4; ++j)
        masks.push_back(detail::position_mask(n, 4 * j - 1) | detail::position_mask(n, 4 * j));
    return masks;
}

inline constexpr Label kGridSymmetryMask = 60;

inline std::vector<Label> grid_symmetry_masks() { return {kGridSymmetryMask}; }

inline bool is_symmetric_label(Label x, const std::vector<Label>& masks) {
    for (Label m : masks)
        if (!is_even(x & m)) return false;
    return true;
}

/// Zeroes every amplitude on a label with odd weight under some mask.
inline EvenParityState symmetry_project(const EvenParityState& state, const std::vector<Label>& masks) {
    EvenParityState out = state;
    for (std::size_t i = 0; i < out.dimension(); ++i)
        if (!is_symmetric_label(even_label(i), masks)) out[i] = 0.0;
    return out;
}

inline EvenParityState symmetry_project(const EvenParityState& state) {
    return symmetry_project(state, block_symmetry_masks(state.qubits()));
}

/// Largest amplitude modulus on labels outside the symmetric set.
inline double asymmetry(const EvenParityState& state, const std::vector<Label>& masks) {
    double worst = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i)
        if (!is_symmetric_label(even_label(i), masks)) worst = std::max(worst, std::abs(state[i]));
    return worst;
}

struct SymmetryGrid {
    std::array<Label, 8> rows{0, 12, 20, 24, 36, 40, 48, 60};
    std::array<Label, 8> cols{0, 3, 65, 66, 129, 130, 192, 195};
    int pivot_row = 0;
    int pivot_col = 0;

    Label label(int r, int c) const { return rows[static_cast<std::size_t>(r)] ^ cols[static_cast<std::size_t>(c)]; }
    Label pivot() const { return label(pivot_row, pivot_col); }
};

struct GridCell {
    Label row = 0;
    Label col = 0;
    Label label = 0;
    Complex residual;
};

struct GridResiduals {
    Label pivot = 0;
    std::vector<GridCell> body;
    Complex four_term_195;  // a0 a195 - a3 a192 + a65 a130 - a66 a129
    Complex four_term_60;   // a0 a60 - a12 a48 + a20 a40 - a24 a36
    double max_abs = 0.0;

    const GridCell& cell(Label row, Label col) const {
        for (const auto& c : body)
            if (c.row == row && c.col == col) return c;
        throw std::out_of_range("grid cell (" + std::to_string(row) + ", " + std::to_string(col) + ") not present");
    }
};

/// Residuals a_p a_{r^c} - a_{r^c0} a_{r0^c} for the grid read from pivot cell (r0, c0).
inline GridResiduals symmetry_grid_residuals(const EvenParityState& state, int pivot_row = 0, int pivot_col = 0,
                                             double pivot_tol = kPivotTol) {
    if (state.qubits() != 8) throw std::invalid_argument("symmetry grid is defined on 8 qubits");
    if (pivot_row < 0 || pivot_row > 7 || pivot_col < 0 || pivot_col > 7)
        throw std::out_of_range("pivot cell outside the grid");
    SymmetryGrid g;
    g.pivot_row = pivot_row;
    g.pivot_col = pivot_col;
    const Complex ap = state.amplitude(g.pivot());
    if (std::abs(ap) <= pivot_tol) {
        throw std::domain_error("grid pivot amplitude at label " + std::to_string(g.pivot()) + " vanishes");
    }
    auto a = [&](Label x) { return state.amplitude(x); };
    GridResiduals out;
    out.pivot = g.pivot();
    for (int r = 0; r < 8; ++r) {
        if (r == pivot_row) continue;
        for (int c = 0; c < 8; ++c) {
            if (c == pivot_col) continue;
            const Complex v = ap * a(g.label(r, c)) - a(g.label(r, pivot_col)) * a(g.label(pivot_row, c));
            out.body.push_back({g.rows[static_cast<std::size_t>(r)], g.cols[static_cast<std::size_t>(c)], g.label(r, c), v});
            out.max_abs = std::max(out.max_abs, std::abs(v));
        }
    }
    out.four_term_195 = a(0) * a(195) - a(3) * a(192) + a(65) * a(130) - a(66) * a(129);
    out.four_term_60 = a(0) * a(60) - a(12) * a(48) + a(20) * a(40) - a(24) * a(36);
    out.max_abs = std::max({out.max_abs, std::abs(out.four_term_195), std::abs(out.four_term_60)});
    return out;
}

/// Symmetric 8-qubit Gaussian with a_0 = 1 from the free first row and column of the grid.
class SymmetricGridSpace : public TermSpace {
   public:
    static constexpr std::array<Label, 6> kFreeRows{12, 20, 24, 36, 40, 48};
    static constexpr std::array<Label, 6> kFreeCols{3, 65, 66, 129, 130, 192};

    int qubits() const override { return 8; }
    Eigen::Index dimension() const override { return 24; }

    void fill(const Eigen::VectorXd& x, EvenParityState& s) const override {
        auto& amps = s.dense();
        std::fill(amps.begin(), amps.end(), Complex{});
        auto put = [&](Label l, Complex v) { amps[even_index(l)] = v; };
        auto get = [&](Label l) { return amps[even_index(l)]; };
        put(0, 1.0);
        for (std::size_t i = 0; i < 6; ++i) {
            put(kFreeRows[i], {x[static_cast<Eigen::Index>(2 * i)], x[static_cast<Eigen::Index>(2 * i + 1)]});
            put(kFreeCols[i], {x[static_cast<Eigen::Index>(12 + 2 * i)], x[static_cast<Eigen::Index>(13 + 2 * i)]});
        }
        put(60, get(12) * get(48) - get(20) * get(40) + get(24) * get(36));
        put(195, get(3) * get(192) - get(65) * get(130) + get(66) * get(129));
        const SymmetryGrid g;
        for (int r = 1; r < 8; ++r)
            for (int c = 1; c < 8; ++c) put(g.label(r, c), get(g.rows[static_cast<std::size_t>(r)]) * get(g.cols[static_cast<std::size_t>(c)]));
    }

    std::unique_ptr<TermSpace> clone() const override { return std::make_unique<SymmetricGridSpace>(*this); }
};

/// Exact 4-term expansion of |M>|M> into basis products.
inline Decomposition symmetric_product_decomposition() {
    const auto target = magic_power(MagicKind::kM, 2);
    Decomposition d;
    d.target = target;
    for (Label x : {0u, 15u, 240u, 255u}) d.terms.push_back({0.5, EvenParityState::basis(8, x)});
    d.refresh();
    return d;
}

/// Annealing over symmetric grid charts for |M>|M>.
inline RankSearchResult symmetric_rank_search(int terms, RankSearchConfig cfg) {
    cfg.terms = terms;
    cfg.symmetry_restricted = true;
    const auto target = magic_power(MagicKind::kM, 2);
    auto out = anneal_with_spaces(target, cfg, [](int k, Rng&) {
        std::vector<std::unique_ptr<TermSpace>> spaces;
        for (int j = 0; j < k; ++j) spaces.push_back(std::make_unique<SymmetricGridSpace>());
        return spaces;
    });
    if (terms >= 4) {
        auto exact = symmetric_product_decomposition();
        if (exact.loss < out.best.loss) {
            out.best = exact;
            out.best_restart = -1;
        }
    }
    return out;
}

struct Rank3Certificate {
    bool applicable = false;
    int eliminated_term = -1;  // index of the term playing the role of |s_3>
    std::string reason;
    Eigen::Matrix<Complex, 3, 2> a;
    Eigen::Matrix<Complex, 2, 3> x;
    Eigen::Matrix3cd product;   // A X
    Eigen::Matrix3cd required;  // (a0^3 / 2) I
    Eigen::Vector3d product_singular_values = Eigen::Vector3d::Zero();
    double sigma3_required = 0.0;
    double residual_norm = 0.0;  // spectral norm of A X - required
    double bound = 0.0;          // max(sigma3(required) - sigma3(A X), 0), a lower bound on residual_norm
    bool obstruction = false;
};

/// Matrix-rank obstruction for a 3-term symmetric decomposition of |M>|M> with nonzero pivots.
///
/// parts are the unnormalized terms c_i |s_i>. The term with the largest
/// |a_0| is taken as the third one. With
/// A_{ri} = a^3_0 a^i_r - a^3_r a^i_0 for r in {12, 48, 60} and
/// X_{ic} = a^i_c / a^i_0 for c in {3, 192, 195}, an exact decomposition
/// would need A X = (a^3_0 / 2) I, which has rank 3 while A X has rank <= 2.
inline constexpr double kCertificatePivotTol = 1e-12;

inline Rank3Certificate rank3_infeasibility_certificate(std::array<EvenParityState, 3> parts,
                                                        double pivot_tol = kCertificatePivotTol,
                                                        double symmetry_tol = 1e-9) {
    Rank3Certificate cert;
    for (std::size_t i = 0; i < 3; ++i) {
        if (parts[i].qubits() != 8) {
            cert.reason = "term " + std::to_string(i + 1) + " is not an 8-qubit state";
            return cert;
        }
        const double scale = std::max(1.0, parts[i].norm());
        if (asymmetry(parts[i], grid_symmetry_masks()) > symmetry_tol * scale) {
            cert.reason = "term " + std::to_string(i + 1) + " violates the grid symmetry";
            return cert;
        }
        if (std::abs(parts[i].amplitude(0)) <= pivot_tol * scale) {
            cert.reason = "term " + std::to_string(i + 1) + " has a vanishing pivot a_0";
            return cert;
        }
    }
    cert.applicable = true;
    cert.eliminated_term = 2;
    for (int i = 0; i < 2; ++i)
        if (std::abs(parts[static_cast<std::size_t>(i)].amplitude(0)) >
            std::abs(parts[static_cast<std::size_t>(cert.eliminated_term)].amplitude(0)))
            cert.eliminated_term = i;
    std::swap(parts[2], parts[static_cast<std::size_t>(cert.eliminated_term)]);
    const std::array<Label, 3> rows{12, 48, 60};
    const std::array<Label, 3> cols{3, 192, 195};
    const auto& p3 = parts[2];
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < 2; ++i)
            cert.a(r, i) = p3.amplitude(0) * parts[static_cast<std::size_t>(i)].amplitude(rows[static_cast<std::size_t>(r)]) -
                           p3.amplitude(rows[static_cast<std::size_t>(r)]) * parts[static_cast<std::size_t>(i)].amplitude(0);
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 3; ++c)
            cert.x(i, c) = parts[static_cast<std::size_t>(i)].amplitude(cols[static_cast<std::size_t>(c)]) /
                           parts[static_cast<std::size_t>(i)].amplitude(0);
    cert.product = cert.a * cert.x;
    cert.required = (p3.amplitude(0) / 2.0) * Eigen::Matrix3cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(cert.product);
    cert.product_singular_values = svd.singularValues();
    cert.sigma3_required = std::abs(p3.amplitude(0)) / 2.0;
    Eigen::JacobiSVD<Eigen::Matrix3cd> rsvd(cert.product - cert.required);
    cert.residual_norm = rsvd.singularValues()[0];
    cert.bound = std::max(cert.sigma3_required - cert.product_singular_values[2], 0.0);
    cert.obstruction = cert.bound > 0.0;
    return cert;
}

inline Rank3Certificate rank3_infeasibility_certificate(const Decomposition& d,
                                                        double pivot_tol = kCertificatePivotTol) {
    if (d.terms.size() != 3) {
        Rank3Certificate cert;
        cert.reason = "decomposition has " + std::to_string(d.terms.size()) + " terms, expected 3";
        return cert;
    }
    std::array<EvenParityState, 3> parts;
    for (std::size_t i = 0; i < 3; ++i) parts[i] = d.terms[i].coefficient * d.terms[i].state;
    return rank3_infeasibility_certificate(parts, pivot_tol);
}

}  // namespace gaussdecomp
