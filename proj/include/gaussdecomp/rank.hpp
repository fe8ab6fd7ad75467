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
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussdecomp/constraints.hpp"
#include "gaussdecomp/extent.hpp"
#include "gaussdecomp/fidelity.hpp"
#include "gaussdecomp/optimize.hpp"
#include "gaussdecomp/parallel.hpp"
#include "gaussdecomp/random.hpp"

namespace gaussdecomp {

enum class MagicKind { kM, kMtilde, kMalpha, kCustom };

struct MagicState {
    MagicKind kind = MagicKind::kCustom;
    double alpha = 0.0;
    EvenParityState state;
};

inline MagicState magic_state(MagicKind kind, double alpha = 0.0) {
    MagicState m;
    m.kind = kind;
    m.state = EvenParityState(4);
    switch (kind) {
        case MagicKind::kM:
            m.state.set(0, std::sqrt(0.5));
            m.state.set(15, std::sqrt(0.5));
            break;
        case MagicKind::kMtilde:
            m.state.set(0, std::sqrt(3.0 / 8.0));
            m.state.set(3, std::sqrt(2.0 / 8.0));
            m.state.set(12, std::sqrt(2.0 / 8.0));
            m.state.set(15, std::sqrt(1.0 / 8.0));
            break;
        case MagicKind::kMalpha:
            if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
            m.alpha = alpha;
            m.state.set(0, alpha);
            m.state.set(15, std::sqrt(1.0 - alpha * alpha));
            break;
        case MagicKind::kCustom:
            throw std::invalid_argument("custom magic states are built from an explicit state");
    }
    return m;
}

inline MagicState magic_state(EvenParityState custom) {
    MagicState m;
    m.kind = MagicKind::kCustom;
    m.state = custom.normalized();
    return m;
}

inline EvenParityState magic_power(MagicKind kind, int copies, double alpha = 0.0) {
    return kron_power(magic_state(kind, alpha).state, copies);
}

/// Parametrization of one unnormalized Gaussian term by real coordinates.
class TermSpace {
   public:
    virtual ~TermSpace() = default;
    virtual int qubits() const = 0;
    virtual Eigen::Index dimension() const = 0;
    virtual void fill(const Eigen::VectorXd& x, EvenParityState& s) const = 0;
    /// A better-conditioned space for the state s, with x rewritten in it; null if none.
    virtual std::unique_ptr<TermSpace> recentered(const EvenParityState& s, Eigen::VectorXd& x) const {
        (void)s;
        (void)x;
        return nullptr;
    }
    virtual std::unique_ptr<TermSpace> clone() const = 0;
};

/// Full chart around a favored label.
class ChartTermSpace : public TermSpace {
   public:
    ChartTermSpace(int n, Label y) : chart_(n, y) {}

    int qubits() const override { return chart_.qubits(); }
    Eigen::Index dimension() const override { return chart_.dimension(); }
    void fill(const Eigen::VectorXd& x, EvenParityState& s) const override { chart_.fill(x, s); }
    Label favored() const { return chart_.favored(); }

    std::unique_ptr<TermSpace> recentered(const EvenParityState& s, Eigen::VectorXd& x) const override {
        const Label peak = s.argmax_label();
        if (std::abs(s.amplitude(peak)) <= 2.0 * std::abs(s.amplitude(chart_.favored()))) return nullptr;
        auto next = std::make_unique<ChartTermSpace>(chart_.qubits(), peak);
        x = next->chart_.coordinates(s);
        return next;
    }

    std::unique_ptr<TermSpace> clone() const override { return std::make_unique<ChartTermSpace>(*this); }

   private:
    ChartCoordinates chart_;
};

struct RankSearchConfig {
    int terms = 2;
    int iterations = 100000;
    double initial_temperature = 1.0;
    double cooling_rate = 0.9995;
    int restarts = 20;
    std::uint64_t seed = 0;
    bool symmetry_restricted = false;
    double step = 0.1;
    int polish_iterations = 2000;
    int threads = 1;
    int log_every = 100;

    void validate() const {
        if (terms < 1) throw std::invalid_argument("terms must be at least 1");
        if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) throw std::invalid_argument("cooling_rate must lie in (0, 1)");
        if (restarts < 1) throw std::invalid_argument("restarts must be positive");
        if (iterations < 0 || polish_iterations < 0) throw std::invalid_argument("iteration budgets must be non-negative");
        if (!(initial_temperature >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
    }
};

struct SearchLogRow {
    int iteration = 0;
    double temperature = 0.0;
    double loss = 0.0;
    double best_loss = 0.0;
};

struct RankSearchResult {
    Decomposition best;
    int best_restart = -1;
    std::vector<double> restart_losses;
    std::vector<Decomposition> restart_decompositions;
    std::vector<SearchLogRow> log;  // trajectory of the best restart
};

namespace detail {

/// Least-squares loss over coefficients with per-term state caching.
class TermFit {
   public:
    TermFit(const EvenParityState& target, std::vector<std::unique_ptr<TermSpace>> spaces)
        : target_(target), spaces_(std::move(spaces)) {
        b_ = Eigen::Map<const Eigen::VectorXcd>(target.dense().data(), static_cast<Eigen::Index>(target.dimension()));
        layout();
    }

    Eigen::Index dimension() const { return offsets_.back(); }
    std::size_t terms() const { return spaces_.size(); }
    Eigen::Index offset(std::size_t j) const { return offsets_[j]; }
    const TermSpace& space(std::size_t j) const { return *spaces_[j]; }

    double loss(const Eigen::VectorXd& x) {
        refresh(x);
        return solve();
    }

    /// Coefficients of the last evaluated point.
    const Eigen::VectorXcd& coefficients() const { return c_; }
    const EvenParityState& state(std::size_t j) const { return states_[j]; }

    /// Moves badly conditioned terms to charts around their peak. Returns true if any changed.
    bool recenter(Eigen::VectorXd& x) {
        refresh(x);
        bool changed = false;
        std::vector<Eigen::VectorXd> segs;
        for (std::size_t j = 0; j < spaces_.size(); ++j) {
            Eigen::VectorXd seg = x.segment(offsets_[j], spaces_[j]->dimension());
            if (auto next = spaces_[j]->recentered(states_[j], seg)) {
                spaces_[j] = std::move(next);
                changed = true;
            }
            segs.push_back(seg);
        }
        if (changed) {
            layout();
            x.resize(dimension());
            for (std::size_t j = 0; j < spaces_.size(); ++j) x.segment(offsets_[j], spaces_[j]->dimension()) = segs[j];
            for (auto& c : cache_) c.resize(0);
        }
        return changed;
    }

   private:
    void layout() {
        offsets_.assign(1, 0);
        for (const auto& s : spaces_) offsets_.push_back(offsets_.back() + s->dimension());
        states_.assign(spaces_.size(), EvenParityState(target_.qubits()));
        cache_.assign(spaces_.size(), Eigen::VectorXd());
        a_.resize(b_.size(), static_cast<Eigen::Index>(spaces_.size()));
    }

    void refresh(const Eigen::VectorXd& x) {
        for (std::size_t j = 0; j < spaces_.size(); ++j) {
            const auto seg = x.segment(offsets_[j], spaces_[j]->dimension());
            if (cache_[j].size() == seg.size() && cache_[j] == seg) continue;
            cache_[j] = seg;
            spaces_[j]->fill(cache_[j], states_[j]);
            a_.col(static_cast<Eigen::Index>(j)) =
                Eigen::Map<const Eigen::VectorXcd>(states_[j].dense().data(), b_.size());
        }
    }

    double solve() {
        const Eigen::MatrixXcd gram = a_.adjoint() * a_;
        c_ = gram.completeOrthogonalDecomposition().solve(a_.adjoint() * b_);
        const double l = (a_ * c_ - b_).squaredNorm();
        return std::isfinite(l) ? l : 1e300;
    }

    const EvenParityState& target_;
    std::vector<std::unique_ptr<TermSpace>> spaces_;
    std::vector<Eigen::Index> offsets_;
    std::vector<EvenParityState> states_;
    std::vector<Eigen::VectorXd> cache_;
    Eigen::MatrixXcd a_;
    Eigen::VectorXcd b_, c_;
};

inline Decomposition fit_to_decomposition(const EvenParityState& target, TermFit& fit, const Eigen::VectorXd& x) {
    fit.loss(x);
    Decomposition d;
    d.target = target;
    for (std::size_t j = 0; j < fit.terms(); ++j) {
        const auto& s = fit.state(j);
        const double nrm = s.norm();
        if (nrm == 0.0) continue;
        d.terms.push_back({fit.coefficients()[static_cast<Eigen::Index>(j)] * nrm, s.normalized()});
    }
    d.refresh();
    return d;
}

struct AnnealRun {
    Decomposition decomposition;
    std::vector<SearchLogRow> log;
};

inline AnnealRun anneal_once(const EvenParityState& target, std::vector<std::unique_ptr<TermSpace>> spaces,
                             const RankSearchConfig& cfg, Rng& rng) {
    TermFit fit(target, std::move(spaces));
    Eigen::VectorXd x(fit.dimension());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = 0.5 * standard_normal(rng);
    double cur = fit.loss(x);
    Eigen::VectorXd best_x = x;
    double best = cur;
    AnnealRun run;
    double temp = cfg.initial_temperature;
    for (int it = 0; it < cfg.iterations; ++it) {
        const auto i = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(x.size()));
        const double old = x[i];
        x[i] += cfg.step * standard_normal(rng);
        const double next = fit.loss(x);
        const bool accept = next <= cur || (temp > 0 && uniform01(rng) < std::exp(-(next - cur) / temp));
        if (accept) {
            cur = next;
            if (cur < best) {
                best = cur;
                best_x = x;
            }
        } else {
            x[i] = old;
        }
        if (cfg.log_every > 0 && it % cfg.log_every == 0) run.log.push_back({it, temp, cur, best});
        temp *= cfg.cooling_rate;
    }
    x = best_x;
    if (cfg.polish_iterations > 0) {
        BfgsOptions o;
        o.max_iterations = cfg.polish_iterations;
        o.function_tol = 1e-16;
        o.stall_iterations = 20;
        for (int round = 0; round < 4; ++round) {
            Objective f = [&](const Eigen::VectorXd& p) { return fit.loss(p); };
            const auto res = bfgs_minimize(f, x, o);
            if (res.value <= best) {
                x = res.x;
                best = res.value;
            }
            if (!fit.recenter(x)) break;
        }
        run.log.push_back({cfg.iterations, 0.0, best, best});
    }
    run.decomposition = fit_to_decomposition(target, fit, x);
    return run;
}

inline std::vector<Label> support_labels(const EvenParityState& s, double tol = 1e-12) {
    std::vector<Label> out;
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if (std::abs(s[i]) > tol) out.push_back(even_label(i));
    return out;
}

}  // namespace detail

/// Builds the term spaces of one restart.
using TermSpaceFactory = std::function<std::vector<std::unique_ptr<TermSpace>>(int terms, Rng& rng)>;

inline RankSearchResult anneal_with_spaces(const EvenParityState& target, const RankSearchConfig& cfg,
                                           const TermSpaceFactory& factory) {
    cfg.validate();
    const EvenParityState psi = target.normalized();
    std::vector<detail::AnnealRun> runs(static_cast<std::size_t>(cfg.restarts));
    parallel_for(runs.size(), cfg.threads, [&](std::size_t r) {
        Rng rng(derive_seed(cfg.seed, r));
        runs[r] = detail::anneal_once(psi, factory(cfg.terms, rng), cfg, rng);
    });
    RankSearchResult out;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const double l = runs[r].decomposition.loss;
        out.restart_losses.push_back(l);
        if (out.best_restart < 0 || l < out.best.loss) {
            out.best = runs[r].decomposition;
            out.best_restart = static_cast<int>(r);
        }
    }
    out.log = runs[static_cast<std::size_t>(out.best_restart)].log;
    for (auto& run : runs) out.restart_decompositions.push_back(std::move(run.decomposition));
    return out;
}

/// Simulated annealing for a k-term Gaussian decomposition in full charts.
inline RankSearchResult anneal_decomposition(const EvenParityState& target, const RankSearchConfig& cfg) {
    if (cfg.symmetry_restricted) {
        throw std::invalid_argument("use symmetric_rank_search for symmetry-restricted searches");
    }
    const auto support = detail::support_labels(target);
    const int n = target.qubits();
    return anneal_with_spaces(target, cfg, [&](int terms, Rng& rng) {
        std::vector<std::unique_ptr<TermSpace>> spaces;
        for (int j = 0; j < terms; ++j)
            spaces.push_back(std::make_unique<ChartTermSpace>(n, support[rng() % support.size()]));
        return spaces;
    });
}

/// Basis-state decomposition on the k largest amplitudes.
inline Decomposition trivial_decomposition(const EvenParityState& target, int terms) {
    std::vector<std::size_t> idx(target.dimension());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(target[a]) > std::abs(target[b]);
    });
    Decomposition d;
    d.target = target;
    for (int j = 0; j < terms && j < static_cast<int>(idx.size()); ++j) {
        const std::size_t i = idx[static_cast<std::size_t>(j)];
        d.terms.push_back({target[i], EvenParityState::basis(target.qubits(), even_label(i))});
    }
    d.refresh();
    return d;
}

struct RankOneLoss {
    double analytic = 0.0;
    double numeric = 0.0;
    double ratio = 0.0;
};

/// Loss of the one-term decomposition alpha^k |0> of |M_alpha>^(x)k, measured in the l1 norm.
inline RankOneLoss malpha_rank1_loss(double alpha, int k) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
    if (k < 1) throw std::invalid_argument("k must be positive");
    RankOneLoss out;
    out.analytic = std::sqrt(2.0) * k * std::pow(alpha, k - 1) * std::sqrt(1.0 - alpha);
    if (alpha == 1.0) return out;
    const auto psi = magic_power(MagicKind::kMalpha, k, alpha);
    auto approx = EvenParityState::basis(psi.qubits(), 0);
    approx *= std::pow(alpha, k);
    out.numeric = l1_distance(psi, approx);
    out.ratio = out.numeric / out.analytic;
    return out;
}

}  // namespace gaussdecomp
