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
#include <functional>
#include <limits>

namespace gaussdecomp {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
    int max_iterations = 500;
    double gradient_tol = 1e-10;
    double function_tol = 1e-14;
    double fd_step = 1e-6;
    int stall_iterations = 3;
};

struct BfgsResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Central-difference gradient.
inline Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double step, int* evals = nullptr) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2 * h);
    }
    if (evals) *evals += static_cast<int>(2 * x.size());
    return g;
}

/// Quasi-Newton minimization with an inverse-Hessian update and Armijo backtracking.
inline BfgsResult bfgs_minimize(const Objective& f, Eigen::VectorXd x, const BfgsOptions& opt = {}) {
    const Eigen::Index d = x.size();
    BfgsResult res;
    double fx = f(x);
    res.evaluations = 1;
    Eigen::VectorXd g = numeric_gradient(f, x, opt.fd_step, &res.evaluations);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(d, d);
    bool scaled = false;
    int stall = 0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        res.iterations = it + 1;
        if (g.lpNorm<Eigen::Infinity>() < opt.gradient_tol) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd p = -H * g;
        double slope = g.dot(p);
        if (!(slope < 0)) {
            H.setIdentity();
            p = -g;
            slope = -g.squaredNorm();
        }
        double t = 1.0;
        Eigen::VectorXd xn;
        double fn = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            xn = x + t * p;
            fn = f(xn);
            ++res.evaluations;
            if (std::isfinite(fn) && fn <= fx + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            if (H.isIdentity()) break;
            H.setIdentity();
            continue;
        }
        Eigen::VectorXd gn = numeric_gradient(f, xn, opt.fd_step, &res.evaluations);
        const Eigen::VectorXd s = xn - x;
        const Eigen::VectorXd yv = gn - g;
        const double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            if (!scaled) {
                H *= sy / yv.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const Eigen::VectorXd Hy = H * yv;
            H += (rho * rho * yv.dot(Hy) + rho) * (s * s.transpose()) - rho * (Hy * s.transpose() + s * Hy.transpose());
        }
        const double improvement = fx - fn;
        x = xn;
        g = gn;
        fx = fn;
        if (improvement <= opt.function_tol * (1.0 + std::abs(fx))) {
            if (++stall >= opt.stall_iterations) {
                res.converged = true;
                break;
            }
        } else {
            stall = 0;
        }
    }
    res.x = x;
    res.value = fx;
    return res;
}

}  // namespace gaussdecomp
