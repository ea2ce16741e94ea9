// Copyright 2026 The qdiff Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Statistics of reduced states: per-qubit probability, phase, purity and
 * entropies; per-pair correlation, concurrence and entropies.
 */
#pragma once

#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "qdiff/state_vector.hpp"

namespace qdiff {

/// Throws ValidationError unless rho is Hermitian, unit-trace and positive
/// semidefinite, each within 1e-9.
void check_density_matrix(const Mat2 &rho);
void check_density_matrix(const Mat4 &rho);

/// Eigenvalues in ascending order, tiny negatives clamped to zero.
[[nodiscard]] Eigen::Vector2d density_eigenvalues(const Mat2 &rho);
[[nodiscard]] Eigen::Vector4d density_eigenvalues(const Mat4 &rho);

/// -sum lambda log2 lambda with 0 log 0 = 0.
template <typename Derived>
double von_neumann_entropy(const Eigen::MatrixBase<Derived> &eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double l = eigenvalues(i);
        if (l > 0.0) {
            s -= l * std::log2(l);
        }
    }
    return s == 0.0 ? 0.0 : s;
}

/// Tr(rho^2) for a Hermitian rho.
template <typename Derived> double purity(const Eigen::MatrixBase<Derived> &rho) {
    return rho.cwiseAbs2().sum();
}

struct QubitStats {
    double prob_one = 0.0;
    std::optional<double> phase; // arg(rho_10); empty when |rho_10| <= 1e-9
    double purity = 1.0;
    double linear_entropy = 0.0;       // 2 (1 - purity)
    double von_neumann_entropy = 0.0;  // bits
};

struct PairStats {
    int wire_i = 0;
    int wire_j = 1;
    double correlation = 0.0;
    double concurrence = 0.0;
    double pair_linear_entropy = 0.0;      // (4/3)(1 - purity)
    double pair_von_neumann_entropy = 0.0; // bits
};

struct HalfMatrix {
    int n = 2;
    std::vector<PairStats> cells; // (0,1), (0,2), ..., (1,2), ...

    [[nodiscard]] const PairStats &at(int i, int j) const;
};

[[nodiscard]] QubitStats qubit_stats(const Mat2 &rho);
[[nodiscard]] std::vector<QubitStats> all_qubit_stats(const StateVector &state);

/// Pearson correlation of the +-1 computational-basis outcomes z = 1 - 2 bit
/// of the two qubits. Index convention of rho: 2 * bit(second) + bit(first).
/// Returns 0 when either marginal is deterministic.
[[nodiscard]] double correlation(const Mat4 &rho);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l are the
/// decreasing square roots of the eigenvalues of rho rho~ and
/// rho~ = (Y x Y) conj(rho) (Y x Y). Evaluated as the singular values of
/// W^T (Y x Y) W with rho = W W^dagger.
[[nodiscard]] double concurrence(const Mat4 &rho);

[[nodiscard]] PairStats pair_stats(const Mat4 &rho);
[[nodiscard]] HalfMatrix half_matrix(const StateVector &state);

enum class BarMode { Probability, Magnitude, Log };

[[nodiscard]] std::string_view to_string(BarMode mode);
[[nodiscard]] BarMode parse_bar_mode(std::string_view text);

/// Bar fill fraction in [0, 1]. Log mode spans `decades` powers of ten.
[[nodiscard]] double bar_length(double p, BarMode mode, int decades = 6);

} // namespace qdiff
