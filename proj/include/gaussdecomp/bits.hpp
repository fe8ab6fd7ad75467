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

// Bit-label arithmetic on computational basis labels.
//
// Public positions are 1-based and leftmost-first: position 1 is the most
// significant of the n bits, position n the least significant. For n = 4 the
// label 12 is the string 1100 and has bits at positions 1 and 2.

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaussdecomp {

using Label = std::uint32_t;
using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 16;

namespace detail {

inline Label position_mask(int n, int position) { return Label{1} << (n - position); }

inline void check_qubits(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::out_of_range("qubit count " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
    }
}

}  // namespace detail

inline int hamming_weight(Label x) { return std::popcount(x); }

inline int hamming_distance(Label x, Label y) { return std::popcount(x ^ y); }

inline bool is_even(Label x) { return (std::popcount(x) & 1) == 0; }

/// Bit at 1-based leftmost-first position.
inline int bit_at(Label x, int n, int position) {
    return static_cast<int>((x >> (n - position)) & 1u);
}

/// Positions where x and y differ, ascending (leftmost first).
inline std::vector<int> diff_positions(Label x, Label y, int n) {
    std::vector<int> out;
    Label diff = x ^ y;
    out.reserve(static_cast<std::size_t>(std::popcount(diff)));
    for (int p = 1; p <= n; ++p) {
        if (diff & detail::position_mask(n, p)) out.push_back(p);
    }
    return out;
}

inline Label flip_bits(Label x, int n, std::span<const int> positions) {
    for (int p : positions) {
        if (p < 1 || p > n) {
            throw std::out_of_range("bit position " + std::to_string(p) + " outside [1, " +
                                    std::to_string(n) + "]");
        }
        x ^= detail::position_mask(n, p);
    }
    return x;
}

inline Label flip_bits(Label x, int n, std::initializer_list<int> positions) {
    return flip_bits(x, n, std::span<const int>(positions.begin(), positions.size()));
}

/// Label with ones exactly at the given positions.
inline Label label_from_positions(int n, std::span<const int> positions) {
    return flip_bits(Label{0}, n, positions);
}

inline std::vector<int> set_positions(Label x, int n) { return diff_positions(x, 0, n); }

/// All even-weight labels on n bits, ascending.
inline std::vector<Label> enumerate_even_labels(int n) {
    detail::check_qubits(n);
    std::vector<Label> out;
    out.reserve(std::size_t{1} << (n - 1));
    for (Label x = 0; x < (Label{1} << n); ++x) {
        if (is_even(x)) out.push_back(x);
    }
    return out;
}

// The k-th even label in ascending order is (k << 1) | parity(k), so the
// dense even-sector index of a label is just label >> 1.
inline std::size_t even_index(Label x) { return x >> 1; }

inline Label even_label(std::size_t index) {
    auto k = static_cast<Label>(index);
    return (k << 1) | static_cast<Label>(std::popcount(k) & 1);
}

struct MajoranaAction {
    Label out_label;
    Complex phase;
};

/// Majorana operator c_k (1 <= k <= 2n) applied to the basis state |x>.
///
/// Jordan-Wigner: c_{2m-1} = Z_1...Z_{m-1} X_m and c_{2m} = Z_1...Z_{m-1} Y_m.
/// The Z-string phase counts set bits at positions 1..m-1 only.
inline MajoranaAction majorana_apply(int k, Label x, int n) {
    if (k < 1 || k > 2 * n) {
        throw std::out_of_range("majorana index " + std::to_string(k) + " outside [1, " +
                                std::to_string(2 * n) + "]");
    }
    const int m = (k + 1) / 2;
    const Label above = x >> (n - m + 1);  // bits at positions 1..m-1
    const bool z_sign = (std::popcount(above) & 1) != 0;
    const int xm = bit_at(x, n, m);
    Complex phase = z_sign ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
    if (k % 2 == 0) {
        // Y|0> = i|1>, Y|1> = -i|0>
        phase *= xm ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
    }
    return {x ^ detail::position_mask(n, m), phase};
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

}  // namespace gaussdecomp
