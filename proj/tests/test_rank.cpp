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

#include "gaussdecomp/rank.hpp"

namespace gaussdecomp {
namespace {

RankSearchConfig quick(int terms, std::uint64_t seed = 1) {
    RankSearchConfig c;
    c.terms = terms;
    c.iterations = 5000;
    c.restarts = 3;
    c.polish_iterations = 400;
    c.seed = seed;
    return c;
}

TEST(Magic, Definitions) {
    const auto m = magic_state(MagicKind::kM).state;
    EXPECT_NEAR(m.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(m.amplitude(15).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(constraint_f(m, {0, 15}).real(), 0.5, 1e-15);

    const auto t = magic_state(MagicKind::kMtilde).state;
    EXPECT_NEAR(t.amplitude(0).real(), std::sqrt(3.0 / 8), 1e-15);
    EXPECT_NEAR(t.amplitude(3).real(), 0.5, 1e-15);
    EXPECT_NEAR(t.amplitude(12).real(), 0.5, 1e-15);
    EXPECT_NEAR(t.amplitude(15).real(), std::sqrt(1.0 / 8), 1e-15);
    EXPECT_TRUE(t.is_normalized());

    EXPECT_LT(std::abs(constraint_f(magic_state(MagicKind::kMalpha, 1 - 1e-9).state, {0, 15})), 1e-4);
    EXPECT_THROW(magic_state(MagicKind::kMalpha, 1.0), std::invalid_argument);
    EXPECT_THROW(magic_state(MagicKind::kMalpha, 0.0), std::invalid_argument);
    EXPECT_EQ(magic_power(MagicKind::kM, 2).qubits(), 8);
}

TEST(Rank, ConfigValidation) {
    RankSearchConfig c;
    c.terms = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.terms = 2;
    c.cooling_rate = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.cooling_rate = 0.99;
    EXPECT_NO_THROW(c.validate());
}

TEST(Rank, MagicStateHasRankTwo) {
    const auto r = anneal_decomposition(magic_state(MagicKind::kM).state, quick(2));
    EXPECT_LE(r.best.loss, 1e-12);
    EXPECT_EQ(r.best.terms.size(), 2u);
}

TEST(Rank, TermsAreGaussianAndLossReproducible) {
    const auto r = anneal_decomposition(random_gaussian(6, 3).normalized(), quick(2, 4));
    for (const auto& d : r.restart_decompositions) {
        for (const auto& t : d.terms) {
            EXPECT_LE(lambda_residual_norm(t.state), 1e-9);
            EXPECT_TRUE(t.state.is_normalized(1e-10));
        }
        Decomposition copy = d;
        copy.refresh();
        EXPECT_NEAR(copy.loss, d.loss, 1e-12);
    }
}

TEST(Rank, BestLossTrajectoryIsMonotone) {
    auto cfg = quick(2, 9);
    cfg.restarts = 1;
    cfg.log_every = 50;
    const auto r = anneal_decomposition(magic_power(MagicKind::kMtilde, 2), cfg);
    ASSERT_GT(r.log.size(), 10u);
    for (std::size_t i = 1; i < r.log.size(); ++i) EXPECT_LE(r.log[i].best_loss, r.log[i - 1].best_loss);
    EXPECT_NEAR(r.log.back().best_loss, r.best.loss, 1e-9);
}

TEST(Rank, DeterministicForSeed) {
    const auto target = magic_power(MagicKind::kMtilde, 2);
    auto cfg = quick(2, 11);
    cfg.restarts = 2;
    const auto a = anneal_decomposition(target, cfg);
    const auto b = anneal_decomposition(target, cfg);
    EXPECT_EQ(a.restart_losses, b.restart_losses);
}

TEST(Rank, MoreTermsNeverWorse) {
    const auto target = magic_power(MagicKind::kMtilde, 2);
    double prev = 2.0;
    for (int k = 1; k <= 3; ++k) {
        const auto r = anneal_decomposition(target, quick(k, 5));
        EXPECT_LE(r.best.loss, prev + 1e-9) << k;
        prev = r.best.loss;
    }
}

TEST(Rank, TrivialDecompositionOfTwoCopies) {
    const auto d = trivial_decomposition(magic_power(MagicKind::kM, 2), 3);
    EXPECT_EQ(d.terms.size(), 3u);
    EXPECT_NEAR(d.loss, 0.25, 1e-12);
    EXPECT_NEAR(trivial_decomposition(magic_power(MagicKind::kM, 2), 4).loss, 0.0, 1e-15);
}

TEST(Rank, MalphaLossLaw) {
    const auto r = malpha_rank1_loss(0.999, 2);
    EXPECT_NEAR(r.analytic, std::sqrt(2.0) * 2 * 0.999 * std::sqrt(0.001), 1e-12);
    EXPECT_NEAR(r.analytic, 0.0893, 1e-4);
    EXPECT_NEAR(r.ratio, 1.0, 0.05);
    // numeric is the l1 norm of the discarded amplitudes
    const double b = std::sqrt(1 - 0.999 * 0.999);
    EXPECT_NEAR(r.numeric, std::pow(0.999 + b, 2) - 0.999 * 0.999, 1e-12);

    const auto one = malpha_rank1_loss(1.0, 3);
    EXPECT_EQ(one.analytic, 0.0);
    EXPECT_EQ(one.numeric, 0.0);

    for (int k : {2, 3}) {
        double prev = 1e9;
        for (int j = 2; j <= 6; ++j) {
            const double ratio = malpha_rank1_loss(1 - std::pow(10.0, -j), k).ratio;
            EXPECT_LT(std::abs(ratio - 1), std::abs(prev - 1)) << k << " " << j;
            prev = ratio;
        }
        EXPECT_NEAR(prev, 1.0, 1e-2);
    }
    EXPECT_THROW(malpha_rank1_loss(0.0, 2), std::invalid_argument);
}

}  // namespace
}  // namespace gaussdecomp
