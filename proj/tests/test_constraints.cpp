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

#include <Eigen/Dense>
#include <cmath>
#include <set>

#include "gaussdecomp/constraints.hpp"

namespace gaussdecomp {
namespace {

EvenParityState magic_m() {
    EvenParityState s(4);
    s.set(0, std::sqrt(0.5));
    s.set(15, std::sqrt(0.5));
    return s;
}

Eigen::MatrixXcd kron_dense(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXcd majorana_matrix(int n, int k) {
    Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity(), X, Y, Z;
    X << 0, 1, 1, 0;
    Y << 0, Complex(0, -1), Complex(0, 1), 0;
    Z << 1, 0, 0, -1;
    const int m = (k + 1) / 2;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
        Eigen::MatrixXcd f = q < m ? Eigen::MatrixXcd(Z) : q == m ? Eigen::MatrixXcd(k % 2 ? X : Y) : Eigen::MatrixXcd(I);
        out = kron_dense(out, f);
    }
    return out;
}

// ||sum_k (c_k (x) c_k)|psi>|psi>|| from dense Pauli matrices.
double dense_lambda_norm(const EvenParityState& s) {
    const int n = s.qubits();
    const int dim = 1 << n;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (int x = 0; x < dim; ++x) psi(x) = s.amplitude(static_cast<Label>(x));
    Eigen::VectorXcd pp(dim * dim);
    for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y) pp(x * dim + y) = psi(x) * psi(y);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim * dim);
    for (int k = 1; k <= 2 * n; ++k) {
        const auto c = majorana_matrix(n, k);
        out += kron_dense(c, c) * pp;
    }
    return out.norm();
}

TEST(Lambda, MatchesDenseOracle) {
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto s = haar_random_even_state(n, 1000 + trial);
            EXPECT_NEAR(lambda_residual_norm(s), dense_lambda_norm(s), 1e-12);
            const auto g = random_gaussian(n, 2000 + trial);
            EXPECT_NEAR(lambda_residual_norm(g), dense_lambda_norm(g), 1e-12);
        }
    }
    EXPECT_NEAR(lambda_residual_norm(magic_m()), dense_lambda_norm(magic_m()), 1e-14);
}

TEST(Lambda, Examples) {
    EXPECT_EQ(lambda_residual_norm(EvenParityState::basis(4, 0)), 0.0);
    EXPECT_GT(lambda_residual_norm(magic_m()), 0.1);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        MatchgateCircuit c{6, {}};
        for (int i = 0; i < 20; ++i) c.gates.push_back(random_matchgate(1 + static_cast<int>(rng() % 5), rng));
        EXPECT_LE(lambda_residual_norm(run_circuit(c, 0)), 1e-10);
    }
}

TEST(Constraint, Examples) {
    EXPECT_NEAR(std::abs(constraint_f(magic_m(), {0, 15}) - 0.5), 0.0, 1e-15);
    EvenParityState s(4);
    for (Label x : {0u, 3u, 12u, 15u}) s.set(x, 0.5);
    EXPECT_NEAR(std::abs(constraint_f(s, {0, 15})), 0.0, 1e-15);
    EXPECT_THROW(constraint_f(s, {0, 3}), std::invalid_argument);
}

TEST(Constraint, ExplicitFourQubitForm) {
    const auto s = haar_random_even_state(4, 9);
    auto a = [&](Label x) { return s.amplitude(x); };
    const Complex expect = a(0) * a(15) - a(3) * a(12) + a(5) * a(10) - a(6) * a(9);
    EXPECT_NEAR(std::abs(constraint_f(s, {0, 15}) - expect), 0.0, 1e-15);
}

TEST(Constraint, Counts) {
    const auto c4 = all_constraints(4);
    std::set<std::pair<Label, Label>> got;
    for (auto id : c4) got.insert({id.u, id.v});
    EXPECT_EQ(got, (std::set<std::pair<Label, Label>>{{0, 15}, {3, 12}, {5, 10}, {6, 9}}));
    EXPECT_TRUE(all_constraints(2).empty());
    for (int n = 4; n <= 8; ++n) {
        std::size_t brute = 0;
        for (Label x = 0; x < (Label{1} << n); ++x)
            for (Label y = x + 1; y < (Label{1} << n); ++y)
                if (is_even(x) && is_even(y) && std::popcount(x ^ y) >= 4) ++brute;
        EXPECT_EQ(all_constraints(n).size(), brute);
        const std::uint64_t formula = (std::uint64_t{1} << (n - 2)) *
                                      ((std::uint64_t{1} << (n - 1)) - binomial(n, 2) - 1);
        EXPECT_EQ(brute, formula);
        EXPECT_EQ(independent_constraints(n, 0).size(), (std::size_t{1} << (n - 1)) - binomial(n, 2) - 1);
    }
    const auto i4 = independent_constraints(4, 0);
    ASSERT_EQ(i4.size(), 1u);
    EXPECT_EQ(i4[0], (ConstraintId{0, 15}));
    EXPECT_EQ(independent_constraints(4, 15)[0], (ConstraintId{15, 0}));
    EXPECT_EQ(independent_constraints(6, 0).size(), 16u);
}

TEST(Constraint, GaussianStatesSatisfyAll) {
    for (int n : {4, 6}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            EXPECT_LE(max_constraint_residual(random_gaussian(n, seed)).max_abs, 1e-10);
            EXPECT_LE(max_constraint_residual(random_gaussian(n, seed, GaussianMethod::kChart)).max_abs, 1e-10);
        }
    }
}

TEST(Constraint, OracleEquivalence) {
    for (int n : {4, 6}) {
        Rng rng(77);
        for (int trial = 0; trial < 200; ++trial) {
            EvenParityState s = (trial % 2 == 0) ? random_gaussian(n, 500 + trial) : haar_random_even_state(n, 500 + trial);
            if (trial % 4 == 2) {
                for (auto& a : s.dense()) a += 1e-3 * complex_normal(rng);
                s = s.normalized();
            }
            const bool lam = lambda_residual_norm(s) <= 1e-10;
            const bool fam = max_constraint_residual(s).max_abs <= 1e-10;
            EXPECT_EQ(lam, fam) << n << " " << trial;
        }
    }
}

// Surviving terms of the per-entry inner sum alternate in sign.
TEST(Constraint, SignAlternation) {
    const int n = 6;
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Label x = 0, y = 0;
        do {
            x = static_cast<Label>(rng() % 64);
            y = static_cast<Label>(rng() % 64);
        } while (is_even(x) || is_even(y) || x == y);
        const auto d = diff_positions(x, y, n);
        std::vector<double> signs;
        for (int k : d) {
            const Label xs = x ^ detail::position_mask(n, k), ys = y ^ detail::position_mask(n, k);
            const Complex s = majorana_apply(2 * k - 1, xs, n).phase * majorana_apply(2 * k - 1, ys, n).phase +
                              majorana_apply(2 * k, xs, n).phase * majorana_apply(2 * k, ys, n).phase;
            ASSERT_NEAR(s.imag(), 0.0, 1e-15);
            ASSERT_NEAR(std::abs(s.real()), 2.0, 1e-15);
            signs.push_back(s.real());
        }
        for (int k = 1; k <= n; ++k) {
            if (bit_at(x, n, k) != bit_at(y, n, k)) continue;
            const Label xs = x ^ detail::position_mask(n, k), ys = y ^ detail::position_mask(n, k);
            const Complex s = majorana_apply(2 * k - 1, xs, n).phase * majorana_apply(2 * k - 1, ys, n).phase +
                              majorana_apply(2 * k, xs, n).phase * majorana_apply(2 * k, ys, n).phase;
            EXPECT_NEAR(std::abs(s), 0.0, 1e-15);
        }
        for (std::size_t i = 1; i < signs.size(); ++i) EXPECT_EQ(signs[i], -signs[i - 1]);
        // The reduced form times the leading sign reproduces the direct entry.
        const auto st = haar_random_even_state(n, 900 + trial);
        Complex direct{}, reduced{};
        for (std::size_t i = 0; i < d.size(); ++i) {
            const Label m = detail::position_mask(n, d[i]);
            direct += signs[i] * st.amplitude(x ^ m) * st.amplitude(y ^ m);
            reduced += ((i % 2 == 0) ? 1.0 : -1.0) * st.amplitude(x ^ m) * st.amplitude(y ^ m);
        }
        EXPECT_NEAR(std::abs(direct - signs[0] * reduced), 0.0, 1e-14);
        if (d.size() >= 4) {
            const Label m1 = detail::position_mask(n, d[0]);
            EXPECT_NEAR(std::abs(constraint_f(st, {x ^ m1, y ^ m1}) - reduced), 0.0, 1e-14);
        }
    }
}

TEST(Completion, Examples) {
    FreeChart c{4, 0, {{0, 1.0}, {3, 1.0}, {12, 2.0}}};
    const auto s = complete_amplitudes(c);
    EXPECT_NEAR(std::abs(s.amplitude(15) - 2.0), 0.0, 1e-15);
    FreeChart z{4, 0, {{0, 1.0}}};
    const auto b = complete_amplitudes(z);
    EXPECT_NEAR(distance_squared(b, EvenParityState::basis(4, 0)), 0.0, 1e-30);
    EXPECT_THROW(complete_amplitudes(FreeChart{4, 0, {{0, 1e-12}}}), std::domain_error);
    EXPECT_THROW(complete_amplitudes(FreeChart{4, 0, {{0, 1.0}, {15, 1.0}}}), std::invalid_argument);
    EXPECT_THROW(complete_amplitudes(FreeChart{4, 0, {{0, 1.0}, {1, 1.0}}}), std::invalid_argument);
    EXPECT_EQ(chart_labels(6, 0).size(), 16u);
}

TEST(Completion, RoundTrip) {
    for (int n : {4, 6, 8, 10}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto s = random_gaussian(n, seed);
            const Label y = s.argmax_label();
            const auto back = complete_amplitudes(restrict_to_chart(s, y));
            double err = 0.0;
            for (std::size_t i = 0; i < s.dimension(); ++i) err = std::max(err, std::abs(back[i] - s[i]));
            EXPECT_LE(err, 1e-9) << n << " " << seed;
            EXPECT_LE(max_constraint_residual(complete_amplitudes(restrict_to_chart(haar_random_even_state(n, seed), 0)))
                          .max_abs,
                      n <= 8 ? 1e-10 : 1e-8);
        }
    }
}

TEST(RandomGaussian, Deterministic) {
    EXPECT_EQ(random_gaussian(6, 3).dense(), random_gaussian(6, 3).dense());
    EXPECT_EQ(random_gaussian(6, 3, GaussianMethod::kChart).dense(),
              random_gaussian(6, 3, GaussianMethod::kChart).dense());
    EXPECT_TRUE(random_gaussian(6, 3).is_normalized());
}

TEST(RandomGaussian, OverlapWithMBounded) {
    const auto m = magic_m();
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto g = random_gaussian(4, seed, seed % 2 ? GaussianMethod::kChart : GaussianMethod::kCircuit);
        EXPECT_LE(std::norm(overlap(m, g)), 0.5 + 1e-9);
    }
}

TEST(Haar, EvenSupportAndMoment) {
    double mean = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) mean += std::norm(haar_random_even_state(4, i).amplitude(0));
    mean /= samples;
    // Var |a_0|^2 for a uniform unit vector in C^8 is (1/8)(7/8)/9.
    const double sigma = std::sqrt((1.0 / 8) * (7.0 / 8) / 9 / samples);
    EXPECT_NEAR(mean, 0.125, 3 * sigma);
}

}  // namespace
}  // namespace gaussdecomp
