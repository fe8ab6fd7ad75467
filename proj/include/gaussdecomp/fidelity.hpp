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
#include <stdexcept>
#include <vector>

#include "gaussdecomp/constraints.hpp"
#include "gaussdecomp/optimize.hpp"
#include "gaussdecomp/parallel.hpp"
#include "gaussdecomp/random.hpp"

namespace gaussdecomp {

/// Real coordinates on the chart around y with the pivot a_y pinned to 1.
class ChartCoordinates {
   public:
    ChartCoordinates(int n, Label y) : n_(n), y_(y) {
        const auto labels = chart_labels(n, y);
        free_.assign(labels.begin() + 1, labels.end());
    }

    int qubits() const { return n_; }
    Label favored() const { return y_; }
    Eigen::Index dimension() const { return static_cast<Eigen::Index>(2 * free_.size()); }
    const std::vector<Label>& free_labels() const { return free_; }

    /// Completed, unnormalized state.
    EvenParityState state(const Eigen::VectorXd& x) const {
        EvenParityState s(n_);
        fill(x, s);
        return s;
    }

    void fill(const Eigen::VectorXd& x, EvenParityState& s) const {
        auto& a = s.dense();
        std::fill(a.begin(), a.end(), Complex{});
        a[even_index(y_)] = 1.0;
        for (std::size_t i = 0; i < free_.size(); ++i) a[even_index(free_[i])] = {x[2 * i], x[2 * i + 1]};
        complete_in_place(s, y_);
    }

    /// Coordinates of a state whose a_y is nonzero.
    Eigen::VectorXd coordinates(const EvenParityState& s) const {
        const Complex ay = s.amplitude(y_);
        if (std::abs(ay) <= kPivotTol) throw std::domain_error("state has vanishing pivot in this chart");
        Eigen::VectorXd x(dimension());
        for (std::size_t i = 0; i < free_.size(); ++i) {
            const Complex v = s.amplitude(free_[i]) / ay;
            x[2 * i] = v.real();
            x[2 * i + 1] = v.imag();
        }
        return x;
    }

   private:
    int n_;
    Label y_;
    std::vector<Label> free_;
};

struct FidelityOptions {
    int restarts = 50;
    std::uint64_t seed = 0;
    int threads = 1;
    int max_recenter = 4;
    BfgsOptions bfgs{};
};

struct FidelityResult {
    double value = 0.0;
    EvenParityState witness;
    int restarts_used = 0;
    int best_restart = -1;
    bool converged = false;
    std::vector<double> restart_values;
};

struct LocalFidelity {
    double value = 0.0;
    EvenParityState witness;
    bool converged = false;
};

/// Local maximization of |<target|s>|^2 / <s|s> starting at a Gaussian state.
inline LocalFidelity maximize_fidelity_from(const EvenParityState& target, const EvenParityState& start,
                                            const FidelityOptions& opt) {
    EvenParityState current = start;
    LocalFidelity out;
    for (int round = 0; round <= opt.max_recenter; ++round) {
        const Label y = current.argmax_label();
        ChartCoordinates chart(target.qubits(), y);
        EvenParityState scratch(target.qubits());
        Objective f = [&](const Eigen::VectorXd& x) {
            chart.fill(x, scratch);
            const double nrm = scratch.norm_squared();
            return -std::norm(overlap(target, scratch)) / nrm;
        };
        const auto res = bfgs_minimize(f, chart.coordinates(current), opt.bfgs);
        current = chart.state(res.x);
        out.converged = res.converged;
        const Label peak = current.argmax_label();
        if (std::abs(current.amplitude(peak)) <= 2.0 * std::abs(current.amplitude(y))) break;
    }
    out.witness = current.normalized();
    out.value = std::norm(overlap(target, out.witness));
    return out;
}

/// Starting point of restart r.
inline EvenParityState fidelity_start(const EvenParityState& target, int r, std::uint64_t seed) {
    const int n = target.qubits();
    const Label y = target.argmax_label();
    if (r == 0) {
        auto s = complete_amplitudes(restrict_to_chart(target, y));
        return s;
    }
    const std::uint64_t rs = derive_seed(seed, static_cast<std::uint64_t>(r));
    if (r % 2 == 1) return random_gaussian(n, rs, GaussianMethod::kCircuit);
    Rng rng(rs);
    EvenParityState s(n);
    s.set(y, 1.0);
    for (Label z : chart_labels(n, y))
        if (z != y) s.set(z, 0.5 * complex_normal(rng));
    complete_in_place(s, y);
    return s;
}

/// Multi-start estimate of the Gaussian fidelity, a lower bound on the true supremum.
inline FidelityResult gaussian_fidelity(const EvenParityState& target, const FidelityOptions& opt = {}) {
    if (target.norm_squared() == 0.0) throw std::domain_error("fidelity of the zero vector");
    if (opt.restarts < 1) throw std::invalid_argument("restarts must be positive");
    const EvenParityState psi = target.normalized();
    std::vector<LocalFidelity> runs(static_cast<std::size_t>(opt.restarts));
    parallel_for(runs.size(), opt.threads, [&](std::size_t r) {
        runs[r] = maximize_fidelity_from(psi, fidelity_start(psi, static_cast<int>(r), opt.seed), opt);
    });
    FidelityResult out;
    out.restarts_used = opt.restarts;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        out.restart_values.push_back(runs[r].value);
        if (runs[r].value > out.value || out.best_restart < 0) {
            out.value = runs[r].value;
            out.best_restart = static_cast<int>(r);
        }
    }
    out.witness = runs[static_cast<std::size_t>(out.best_restart)].witness;
    out.converged = runs[static_cast<std::size_t>(out.best_restart)].converged;
    return out;
}

inline FidelityResult gaussian_fidelity(const EvenParityState& target, int restarts, std::uint64_t seed,
                                        int threads = 1) {
    FidelityOptions opt;
    opt.restarts = restarts;
    opt.seed = seed;
    opt.threads = threads;
    return gaussian_fidelity(target, opt);
}

/// 2^(2-n) (1 + delta) n^4, unclamped.
inline double fidelity_upper_bound(int n, double delta) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    return std::ldexp(1.0, 2 - n) * (1.0 + delta) * std::pow(static_cast<double>(n), 4);
}

}  // namespace gaussdecomp
