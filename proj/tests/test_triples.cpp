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

#include <gtest/gtest.h>

#include <cmath>

#include "gaussdecomp/triples.hpp"

namespace gaussdecomp {
namespace {

TEST(Signs, KnownCases) {
    EXPECT_EQ(sign_s(1, 4, 2, 3, 0), -1);  // b0 < c0 < c1 < b1
    EXPECT_EQ(sign_s(2, 3, 1, 4, 0), -1);  // c0 < b0 < b1 < c1
    EXPECT_EQ(sign_s(1, 3, 2, 4, 0), 1);   // interleaved
    EXPECT_EQ(sign_s(2, 4, 1, 3, 0), 1);
    EXPECT_EQ(sign_s(1, 2, 3, 4, 1), -1);  // b0 < b1 < c0 < c1
    EXPECT_EQ(sign_s(3, 4, 1, 2, 1), -1);
    EXPECT_EQ(sign_s(1, 4, 2, 3, 1), 1);
    EXPECT_EQ(sign_t(2, 1, 3, 4, 0), 1);
    EXPECT_EQ(sign_t(3, 1, 2, 4, 0), -1);  // d0 < d1 < bk < d2
    EXPECT_EQ(sign_t(1, 2, 3, 4, 1), -1);  // bk < d0 < d1 < d2
    EXPECT_EQ(sign_t(4, 1, 2, 3, 1), -1);
    EXPECT_EQ(sign_t(1, 2, 3, 4, 2), 1);
    EXPECT_EQ(sign_t(2, 1, 3, 4, 2), -1);  // d0 < bk < d1 < d2
    EXPECT_THROW(sign_s(1, 2, 2, 3, 0), std::invalid_argument);
    EXPECT_THROW(sign_t(1, 1, 2, 3, 0), std::invalid_argument);
    EXPECT_THROW(sign_s(1, 2, 3, 4, 2), std::invalid_argument);
}

// The case tables agree with the reduced equation on every ordering.
TEST(Signs, MatchReducedEquation) {
    const int n = 6;
    Rng rng(3);
    EvenParityState s(n);
    for (auto& a : s.dense()) a = complex_normal(rng);
    auto A = [&](int i, int j) { return s.amplitude(pair_label(n, std::min(i, j), std::max(i, j))); };
    for (int b0 = 1; b0 <= 4; ++b0)
        for (int b1 = b0 + 1; b1 <= 4; ++b1)
            for (int c0 = 1; c0 <= 4; ++c0)
                for (int c1 = c0 + 1; c1 <= 4; ++c1) {
                    if (c0 == b0 || c0 == b1 || c1 == b0 || c1 == b1) continue;
                    // Reduced equation: a_b a_c = s0 a[b0c0]a[b1c1] + s1 a[b0c1]a[b1c0].
                    const Label x = pair_label(n, b0, b1) | pair_label(n, c0, c1);
                    const Complex r = reduced_residual(s, x);
                    const Complex lhs = A(b0, b1) * A(c0, c1) -
                                        (double(sign_s(b0, b1, c0, c1, 0)) * A(b0, c0) * A(b1, c1) +
                                         double(sign_s(b0, b1, c0, c1, 1)) * A(b0, c1) * A(b1, c0));
                    EXPECT_NEAR(std::abs(std::abs(r) - std::abs(lhs)), 0.0, 1e-14);
                    EXPECT_TRUE(std::abs(r - lhs) < 1e-14 || std::abs(r + lhs) < 1e-14);
                }
    for (int bk = 1; bk <= 4; ++bk) {
        std::vector<int> d;
        for (int i = 1; i <= 4; ++i)
            if (i != bk) d.push_back(i);
        const Label x = pair_label(n, bk, d[0]) | pair_label(n, d[1], d[2]);
        const Complex r = reduced_residual(s, x);
        const Complex eq = double(sign_t(bk, d[0], d[1], d[2], 0)) * A(bk, d[0]) * A(d[1], d[2]) +
                           double(sign_t(bk, d[0], d[1], d[2], 1)) * A(bk, d[1]) * A(d[0], d[2]) +
                           double(sign_t(bk, d[0], d[1], d[2], 2)) * A(bk, d[2]) * A(d[0], d[1]);
        EXPECT_TRUE(std::abs(r - eq) < 1e-14 || std::abs(r + eq) < 1e-14) << bk;
    }
}

TEST(SolveChart, FourQubitExample) {
    std::map<Label, Complex> free{{0, 1.0}, {12, 1.0}, {10, 0.3}, {9, -0.7}, {6, 0.2}, {5, 0.4}};
    const auto s = solve_triple_chart(4, free, 12);
    // a_12 a_3 = a_10 a_5 - a_9 a_6 from the reduced equation on [1,2,3,4].
    EXPECT_NEAR(std::abs(s.amplitude(3) - (0.3 * 0.4 - (-0.7) * 0.2)), 0.0, 1e-15);
    EXPECT_LE(reduced_residuals(s, 12).max_all(), 1e-12);
}

TEST(SolveChart, OnlyAnchorGivesZeros) {
    const auto s = solve_triple_chart(6, {{0, 1.0}, {pair_label(6, 2, 5), 0.8}}, pair_label(6, 2, 5));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const Label x = even_label(i);
        if (x != 0 && x != pair_label(6, 2, 5)) EXPECT_EQ(s[i], Complex{});
    }
    EXPECT_THROW(solve_triple_chart(6, {{0, 1.0}, {pair_label(6, 2, 5), 1e-12}}, pair_label(6, 2, 5)),
                 std::domain_error);
    EXPECT_THROW(solve_triple_chart(6, {{0, 1.0}, {pair_label(6, 2, 5), 1.0}, {pair_label(6, 1, 3), 1.0}},
                                    pair_label(6, 2, 5)),
                 std::invalid_argument);
}

TEST(SolveChart, RedundancyAcrossSizes) {
    Rng rng(17);
    for (int n = 4; n <= 7; ++n) {
        for (int t = 0; t < 20; ++t) {
            const auto sample = random_triple_solution(n, rng);
            const auto r = reduced_residuals(sample.state, sample.anchor);
            EXPECT_LE(r.max_w4, 1e-10);
            EXPECT_LE(r.max_w6, 1e-10);
            EXPECT_LE(r.max_w2, 1e-10);
        }
    }
}

TEST(BuildTriple, TrivialChart) {
    const auto t = build_triple(4, MatchgateCircuit{4, {}}, {{0, 0.5}, {3, 0.5}}, 3);
    EXPECT_NEAR(t.alpha, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(t.beta, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(t.psi0.amplitude(0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t.psi1.amplitude(0) - std::sqrt(0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t.psi1.amplitude(3) - std::sqrt(0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t.psi2.amplitude(3) + std::sqrt(0.5)), 0.0, 1e-15);
    EXPECT_LE(t.dependence_residual(), 1e-15);
}

TEST(BuildTriple, RandomCircuits) {
    Rng rng(8);
    for (int n : {4, 6}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto sample = random_triple_solution(n, rng);
            std::map<Label, Complex> free{{0, sample.state.amplitude(0)}};
            for (Label z : triple_free_labels(n, sample.anchor)) free[z] = sample.state.amplitude(z);
            const auto u = random_brickwork(n, 2 * n, rng);
            const auto t = build_triple(n, u, free, sample.anchor);
            EXPECT_LE(t.dependence_residual(), 1e-9);
            EXPECT_LE(lambda_residual_norm(t.psi1), 1e-9);
            EXPECT_LE(lambda_residual_norm(t.psi2), 1e-9);
            EXPECT_NEAR(t.psi1.norm(), 1.0, 1e-12);
            // Completion from the chart at 0 kills every amplitude of weight >= 4.
            auto comp = complete_amplitudes(restrict_to_chart(sample.state, 0));
            for (std::size_t i = 0; i < comp.dimension(); ++i)
                if (hamming_weight(even_label(i)) >= 4) EXPECT_LE(std::abs(comp[i]), 1e-10);
        }
    }
}

TEST(BuildTriple, SolvedChartsAreAlwaysGaussian) {
    std::map<Label, Complex> free{{0, 0.5}, {3, 0.5}, {10, 0.5}, {5, 0.5}};
    const auto t = build_triple(4, MatchgateCircuit{4, {}}, free, 3);
    EXPECT_NEAR(std::abs(t.psi1.amplitude(12)), 0.5 * 0.5 / 0.5 / t.alpha, 1e-15);
    EXPECT_THROW(build_triple(4, MatchgateCircuit{4, {}}, {{0, 1.0}}, 0), std::domain_error);
}

TEST(Dimension, MatchesTwoNMinusThree) {
    for (int n : {4, 5, 6, 7}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto rep = triple_manifold_dimension(n, seed);
            EXPECT_EQ(rep.dimension, 2 * n - 3) << n;
            EXPECT_EQ(rep.real_dimension, 2 * (2 * n - 3));
            EXPECT_GE(rep.gap, 1e3);
        }
    }
}

}  // namespace
}  // namespace gaussdecomp
