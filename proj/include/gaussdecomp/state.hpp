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

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaussdecomp/bits.hpp"

namespace gaussdecomp {

/// Pure state supported on the even-weight sector of n qubits.
///
/// Amplitudes are stored densely, one per even label, in ascending label
/// order (index = label >> 1). Odd labels carry no amplitude by construction.
class EvenParityState {
   public:
    EvenParityState() = default;

    explicit EvenParityState(int n) : n_(n) {
        detail::check_qubits(n);
        amps_.assign(std::size_t{1} << (n - 1), Complex{});
    }

    EvenParityState(int n, std::vector<Complex> dense) : n_(n), amps_(std::move(dense)) {
        detail::check_qubits(n);
        if (amps_.size() != (std::size_t{1} << (n - 1))) {
            throw std::invalid_argument("dense amplitude vector has length " +
                                        std::to_string(amps_.size()) + ", expected " +
                                        std::to_string(std::size_t{1} << (n - 1)));
        }
    }

    static EvenParityState basis(int n, Label x) {
        EvenParityState s(n);
        s.set(x, 1.0);
        return s;
    }

    int qubits() const { return n_; }
    std::size_t dimension() const { return amps_.size(); }

    Complex amplitude(Label x) const {
        if (!is_even(x)) return {};
        check_label(x);
        return amps_[even_index(x)];
    }

    void set(Label x, Complex value) {
        if (!is_even(x)) throw std::invalid_argument("odd-weight label " + std::to_string(x));
        check_label(x);
        amps_[even_index(x)] = value;
    }

    Complex& operator[](std::size_t index) { return amps_[index]; }
    const Complex& operator[](std::size_t index) const { return amps_[index]; }

    const std::vector<Complex>& dense() const { return amps_; }
    std::vector<Complex>& dense() { return amps_; }

    double norm_squared() const {
        double acc = 0.0;
        for (const auto& a : amps_) acc += std::norm(a);
        return acc;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    bool is_normalized(double tol = 1e-12) const { return std::abs(norm_squared() - 1.0) <= tol; }

    EvenParityState normalized() const {
        const double nrm = norm();
        if (nrm == 0.0) throw std::domain_error("cannot normalize the zero vector");
        EvenParityState out = *this;
        for (auto& a : out.amps_) a /= nrm;
        return out;
    }

    /// Label of the largest-modulus amplitude; ties go to the smallest label.
    Label argmax_label() const {
        std::size_t best = 0;
        double best_mod = -1.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            const double m = std::norm(amps_[i]);
            if (m > best_mod) {
                best_mod = m;
                best = i;
            }
        }
        return even_label(best);
    }

    EvenParityState& operator+=(const EvenParityState& other) {
        check_same(other);
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
        return *this;
    }

    EvenParityState& operator-=(const EvenParityState& other) {
        check_same(other);
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= other.amps_[i];
        return *this;
    }

    EvenParityState& operator*=(Complex c) {
        for (auto& a : amps_) a *= c;
        return *this;
    }

    friend EvenParityState operator+(EvenParityState a, const EvenParityState& b) { return a += b; }
    friend EvenParityState operator-(EvenParityState a, const EvenParityState& b) { return a -= b; }
    friend EvenParityState operator*(Complex c, EvenParityState a) { return a *= c; }

    void check_same(const EvenParityState& other) const {
        if (other.n_ != n_) {
            throw std::invalid_argument("qubit count mismatch: " + std::to_string(n_) + " vs " +
                                        std::to_string(other.n_));
        }
    }

   private:
    void check_label(Label x) const {
        if (x >= (Label{1} << n_)) {
            throw std::out_of_range("label " + std::to_string(x) + " outside " + std::to_string(n_) +
                                    "-qubit range");
        }
    }

    int n_ = 0;
    std::vector<Complex> amps_;
};

/// <s1|s2>, conjugate-linear in the first argument.
inline Complex overlap(const EvenParityState& s1, const EvenParityState& s2) {
    s1.check_same(s2);
    Complex acc{};
    for (std::size_t i = 0; i < s1.dimension(); ++i) acc += std::conj(s1[i]) * s2[i];
    return acc;
}

inline double distance_squared(const EvenParityState& a, const EvenParityState& b) {
    a.check_same(b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::norm(a[i] - b[i]);
    return acc;
}

inline double l1_distance(const EvenParityState& a, const EvenParityState& b) {
    a.check_same(b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

/// a ⊗ b with a on the leftmost qubits.
inline EvenParityState kron(const EvenParityState& a, const EvenParityState& b) {
    const int n = a.qubits() + b.qubits();
    EvenParityState out(n);
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        if (a[i] == Complex{}) continue;
        const Label x = even_label(i);
        for (std::size_t j = 0; j < b.dimension(); ++j) {
            const Label y = even_label(j);
            out.set((x << b.qubits()) | y, a[i] * b[j]);
        }
    }
    return out;
}

inline EvenParityState kron_power(const EvenParityState& a, int copies) {
    if (copies < 1) throw std::invalid_argument("tensor power needs at least one copy");
    EvenParityState out = a;
    for (int i = 1; i < copies; ++i) out = kron(out, a);
    return out;
}

}  // namespace gaussdecomp
