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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussdecomp/random.hpp"
#include "gaussdecomp/state.hpp"

namespace gaussdecomp {

using Mat2 = Eigen::Matrix2cd;

/// Nearest-neighbour gate G(A, B) on qubits (site, site + 1).
///
/// A mixes the |00>,|11> components of the pair and B mixes |01>,|10>.
/// Both must be unitary with det A = det B.
struct Matchgate {
    Mat2 a = Mat2::Identity();
    Mat2 b = Mat2::Identity();
    int site = 1;

    Matchgate() = default;
    Matchgate(Mat2 a_in, Mat2 b_in, int site_in, double tol = 1e-12)
        : a(std::move(a_in)), b(std::move(b_in)), site(site_in) {
        validate(tol);
    }

    void validate(double tol = 1e-12) const {
        const Mat2 id = Mat2::Identity();
        if ((a.adjoint() * a - id).cwiseAbs().maxCoeff() > tol ||
            (b.adjoint() * b - id).cwiseAbs().maxCoeff() > tol) {
            throw std::invalid_argument("matchgate blocks must be unitary");
        }
        if (std::abs(a.determinant() - b.determinant()) > tol) {
            throw std::invalid_argument("matchgate requires det(A) == det(B)");
        }
    }

    /// The 4x4 matrix in the |q_site q_site+1> basis 00, 01, 10, 11.
    Eigen::Matrix4cd matrix() const {
        Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
        g(0, 0) = a(0, 0);
        g(0, 3) = a(0, 1);
        g(3, 0) = a(1, 0);
        g(3, 3) = a(1, 1);
        g(1, 1) = b(0, 0);
        g(1, 2) = b(0, 1);
        g(2, 1) = b(1, 0);
        g(2, 2) = b(1, 1);
        return g;
    }
};

struct MatchgateCircuit {
    int n = 0;
    std::vector<Matchgate> gates;

    void validate() const {
        for (const auto& g : gates) {
            if (g.site < 1 || g.site > n - 1) {
                throw std::out_of_range("gate site " + std::to_string(g.site) + " outside [1, " +
                                        std::to_string(n - 1) + "]");
            }
        }
    }
};

inline void apply_matchgate_inplace(EvenParityState& state, const Matchgate& gate) {
    const int n = state.qubits();
    if (gate.site < 1 || gate.site > n - 1) {
        throw std::out_of_range("gate site " + std::to_string(gate.site) + " outside [1, " +
                                std::to_string(n - 1) + "]");
    }
    const Label hi = detail::position_mask(n, gate.site);
    const Label lo = detail::position_mask(n, gate.site + 1);
    const Label pair = hi | lo;
    auto& amps = state.dense();
    for (Label base = 0; base < (Label{1} << n); ++base) {
        if (base & pair) continue;
        if (is_even(base)) {
            Complex& v00 = amps[even_index(base)];
            Complex& v11 = amps[even_index(base | pair)];
            const Complex x00 = v00, x11 = v11;
            v00 = gate.a(0, 0) * x00 + gate.a(0, 1) * x11;
            v11 = gate.a(1, 0) * x00 + gate.a(1, 1) * x11;
        } else {
            Complex& v01 = amps[even_index(base | lo)];
            Complex& v10 = amps[even_index(base | hi)];
            const Complex x01 = v01, x10 = v10;
            v01 = gate.b(0, 0) * x01 + gate.b(0, 1) * x10;
            v10 = gate.b(1, 0) * x01 + gate.b(1, 1) * x10;
        }
    }
}

inline EvenParityState apply_matchgate(EvenParityState state, const Matchgate& gate) {
    apply_matchgate_inplace(state, gate);
    return state;
}

inline EvenParityState apply_circuit(const MatchgateCircuit& circuit, EvenParityState state) {
    if (state.qubits() != circuit.n) throw std::invalid_argument("circuit/state qubit mismatch");
    for (const auto& g : circuit.gates) apply_matchgate_inplace(state, g);
    return state;
}

inline EvenParityState run_circuit(const MatchgateCircuit& circuit, Label input) {
    if (!is_even(input)) throw std::invalid_argument("run_circuit needs an even-weight input label");
    circuit.validate();
    return apply_circuit(circuit, EvenParityState::basis(circuit.n, input));
}

/// Sites of a brickwork layer: 1, 3, 5, ... for even layers, 2, 4, ... for odd.
inline std::vector<int> brickwork_sites(int n, int layer) {
    std::vector<int> sites;
    for (int s = (layer % 2 == 0) ? 1 : 2; s <= n - 1; s += 2) sites.push_back(s);
    return sites;
}

inline int brickwork_gate_count(int n, int depth) {
    int count = 0;
    for (int layer = 0; layer < depth; ++layer) count += static_cast<int>(brickwork_sites(n, layer).size());
    return count;
}

inline Mat2 haar_unitary2(Rng& rng) {
    Mat2 z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = complex_normal(rng);
    Eigen::HouseholderQR<Mat2> qr(z);
    Mat2 q = qr.householderQ();
    Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) {
        const Complex d = r(j, j);
        const Complex ph = std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
        q.col(j) *= ph;
    }
    return q;
}

/// Haar-random A and Haar-random B conditioned on det B = det A.
inline Matchgate random_matchgate(int site, Rng& rng) {
    Mat2 a = haar_unitary2(rng);
    Mat2 b = haar_unitary2(rng);
    const Complex ratio = a.determinant() / b.determinant();
    b *= std::sqrt(ratio);
    Matchgate g;
    g.a = a;
    g.b = b;
    g.site = site;
    return g;
}

inline MatchgateCircuit random_brickwork(int n, int depth, Rng& rng) {
    MatchgateCircuit c{n, {}};
    for (int layer = 0; layer < depth; ++layer)
        for (int s : brickwork_sites(n, layer)) c.gates.push_back(random_matchgate(s, rng));
    return c;
}

/// SU(2) element from three angles.
inline Mat2 su2(double theta, double alpha, double beta) {
    Mat2 m;
    m(0, 0) = std::polar(std::cos(theta), alpha);
    m(0, 1) = std::polar(std::sin(theta), beta);
    m(1, 0) = -std::polar(std::sin(theta), -beta);
    m(1, 1) = std::polar(std::cos(theta), -alpha);
    return m;
}

inline constexpr int kMatchgateParams = 7;

/// Matchgate from 7 real parameters: a shared phase and two SU(2) blocks.
/// Every matchgate is reachable, since det A = det B fixes a common phase.
inline Matchgate matchgate_from_params(std::span<const double> p, int site) {
    const Complex phase = std::polar(1.0, p[0]);
    Matchgate g;
    g.a = phase * su2(p[1], p[2], p[3]);
    g.b = phase * su2(p[4], p[5], p[6]);
    g.site = site;
    return g;
}

/// Brickwork circuit whose gates are read consecutively from params.
inline MatchgateCircuit brickwork_from_params(int n, int depth, std::span<const double> params) {
    MatchgateCircuit c{n, {}};
    std::size_t offset = 0;
    for (int layer = 0; layer < depth; ++layer) {
        for (int s : brickwork_sites(n, layer)) {
            if (offset + kMatchgateParams > params.size()) {
                throw std::invalid_argument("not enough brickwork parameters");
            }
            c.gates.push_back(matchgate_from_params(params.subspan(offset, kMatchgateParams), s));
            offset += kMatchgateParams;
        }
    }
    return c;
}

}  // namespace gaussdecomp
