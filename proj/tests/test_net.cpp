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

#include "gaussdecomp/net.hpp"

namespace gaussdecomp {
namespace {

TEST(Delta, Examples) {
    EXPECT_DOUBLE_EQ(delta_recursion(4, 2, 0.3), 0.3);
    EXPECT_DOUBLE_EQ(delta_recursion(4, 4, 1.0), 112.0);
    EXPECT_DOUBLE_EQ(delta_recursion(6, 6, 1.0), 11.0 * 64 * 7 * 64);
    EXPECT_THROW(delta_recursion(6, 3, 1.0), std::invalid_argument);
}

TEST(Delta, ClosedFormAgrees) {
    for (int n = 2; n <= 12; ++n)
        for (int w = 2; w <= n; w += 2) {
            const double r = delta_recursion(n, w, 1e-3);
            EXPECT_NEAR(delta_closed_form(n, w, 1e-3) / r, 1.0, 1e-9) << n << " " << w;
        }
}

TEST(NetBound, Examples) {
    EXPECT_EQ(net_cardinality_bound(4, 4).log2_total, 356.0);
    EXPECT_EQ(net_cardinality_bound(2, 1).log2_total, 30.0);
    for (int l = 0; l < 10; ++l)
        EXPECT_LT(net_cardinality_bound(5, l).log2_total, net_cardinality_bound(5, l + 1).log2_total);
    const auto b = net_cardinality_bound(4, 4);
    EXPECT_EQ(b.log2_eta, -20.0);
    EXPECT_EQ(b.log2_per_region, 2 * 16 + 1 + 16 * 20.0);
}

TEST(Relabel, PreservesGaussianity) {
    const auto g = random_gaussian(6, 3);
    const auto h = xor_relabel(g, 0b110110);
    EXPECT_LE(lambda_residual_norm(h), 1e-10);
    EXPECT_EQ(random_gaussian_in_s0(6, 3).argmax_label(), 0u);
}

TEST(Perturbation, WithinRecursionBound) {
    const auto rep = perturbation_propagation_check(4, 1e-10, 100, 5);
    EXPECT_TRUE(rep.within_bounds);
    EXPECT_LE(rep.max_distance, std::exp2(16.0) * 1e-10);
    EXPECT_LT(rep.max_ratio, std::exp2(16.0));
    EXPECT_LE(rep.max_weight_deviation[2], delta_recursion(4, 4, 1e-10));
    const auto zero = perturbation_propagation_check(4, 0.0, 10, 5);
    EXPECT_EQ(zero.max_distance, 0.0);
    EXPECT_TRUE(perturbation_propagation_check(6, 1e-8, 30, 6).within_bounds);
}

TEST(Covering, CoarseGridCovers) {
    const auto rep = covering_demo(4, 0.05, 500, 2);
    EXPECT_LE(rep.max_distance, rep.lemma_bound);
    EXPECT_GT(rep.grid_points_used, 1u);
}

TEST(Survey, SmallScale) {
    const auto rep = empirical_fidelity_survey(4, 50, 1, 4);
    EXPECT_TRUE(rep.bound_vacuous);
    EXPECT_TRUE(rep.within_bound);
    for (double v : rep.values) {
        EXPECT_GT(v, 1.0 / 8);  // never below the largest basis overlap
        EXPECT_LE(v, 1.0 + 1e-12);
    }
}

// Baseline recorded on the first run of the n = 8 survey (50 samples, seed 8,
// 4 restarts). Regression guard, not a theorem.
TEST(Survey, FrozenBaselineN8) {
    const auto rep = empirical_fidelity_survey(8, 50, 8, 4);
    EXPECT_NEAR(rep.max, 0.449270004817, 1e-6);
    EXPECT_TRUE(rep.bound_vacuous);
    EXPECT_LT(rep.max, 1.0);
    EXPECT_TRUE(rep.within_bound);
}

}  // namespace
}  // namespace gaussdecomp
