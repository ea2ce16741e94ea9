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
#include "qdiff/analytics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

namespace qdiff {

namespace {

constexpr double kDensityTol = 1e-9;

template <typename M> void check_density(const M &rho, const Eigen::VectorXd &eig) {
    if (!rho.allFinite()) {
        throw ValidationError("density matrix has non-finite entries");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kDensityTol) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - cplx{1.0}) > kDensityTol) {
        throw ValidationError("density matrix trace is not 1");
    }
    if (eig.minCoeff() < -kDensityTol) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

Eigen::Vector4d raw_eigenvalues(const Mat4 &rho) {
    // Eigen's self-adjoint solver (tridiagonalization + implicit QR) is
    // deterministic for a fixed input.
    const Mat4 h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat4> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Eigen::Vector2d raw_eigenvalues(const Mat2 &rho) {
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double off = std::abs(rho(0, 1));
    const double mean = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
    return {mean - rad, mean + rad};
}

template <typename V> V clamp_nonnegative(V v) {
    return v.cwiseMax(0.0);
}

// Columns of W with rho = W W^dagger. Eigenvalues at round-off level are
// dropped so that a numerically pure rho yields a rank-one factor.
Eigen::MatrixXcd psd_factor(const Mat4 &m) {
    const Mat4 h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat4> es(h);
    constexpr double kRankCutoff = 1e-14;
    Eigen::MatrixXcd w(4, 0);
    for (int i = 3; i >= 0; --i) {
        const double l = es.eigenvalues()(i);
        if (l <= kRankCutoff) {
            break;
        }
        w.conservativeResize(Eigen::NoChange, w.cols() + 1);
        w.col(w.cols() - 1) = std::sqrt(l) * es.eigenvectors().col(i);
    }
    return w;
}

} // namespace

void check_density_matrix(const Mat2 &rho) { check_density(rho, raw_eigenvalues(rho)); }
void check_density_matrix(const Mat4 &rho) { check_density(rho, raw_eigenvalues(rho)); }

Eigen::Vector2d density_eigenvalues(const Mat2 &rho) {
    return clamp_nonnegative(raw_eigenvalues(rho));
}

Eigen::Vector4d density_eigenvalues(const Mat4 &rho) {
    return clamp_nonnegative(raw_eigenvalues(rho));
}

const PairStats &HalfMatrix::at(int i, int j) const {
    if (i > j) {
        std::swap(i, j);
    }
    if (i < 0 || j >= n || i == j) {
        throw ValidationError("half-matrix cell out of range");
    }
    // Row-major over the strict upper triangle.
    const int offset = i * n - i * (i + 1) / 2 + (j - i - 1);
    return cells.at(static_cast<std::size_t>(offset));
}

QubitStats qubit_stats(const Mat2 &rho) {
    check_density_matrix(rho);
    QubitStats s;
    s.prob_one = rho(1, 1).real();
    if (std::abs(rho(1, 0)) > 1e-9) {
        s.phase = std::arg(rho(1, 0));
    }
    s.purity = purity(rho);
    s.linear_entropy = 2.0 * (1.0 - s.purity);
    s.von_neumann_entropy = von_neumann_entropy(density_eigenvalues(rho));
    return s;
}

std::vector<QubitStats> all_qubit_stats(const StateVector &state) {
    std::vector<QubitStats> out;
    out.reserve(static_cast<std::size_t>(state.num_qubits()));
    for (int q = 0; q < state.num_qubits(); ++q) {
        out.push_back(qubit_stats(partial_trace_single(state, q)));
    }
    return out;
}

double correlation(const Mat4 &rho) {
    check_density_matrix(rho);
    double z_first = 0.0;
    double z_second = 0.0;
    double z_both = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double p = rho(k, k).real();
        const double z1 = (k & 1) ? -1.0 : 1.0;
        const double z2 = (k & 2) ? -1.0 : 1.0;
        z_first += p * z1;
        z_second += p * z2;
        z_both += p * z1 * z2;
    }
    const double sigma = std::sqrt(std::max(0.0, 1.0 - z_first * z_first)) *
                         std::sqrt(std::max(0.0, 1.0 - z_second * z_second));
    if (sigma < 1e-12) {
        return 0.0;
    }
    return std::clamp((z_both - z_first * z_second) / sigma, -1.0, 1.0);
}

double concurrence(const Mat4 &rho) {
    check_density_matrix(rho);
    Mat4 yy = Mat4::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    // The square roots of the eigenvalues of rho * rho~ are the singular
    // values of W^T (Y x Y) W for any factor rho = W W^dagger.
    const Eigen::MatrixXcd w = psd_factor(rho);
    if (w.cols() == 0) {
        return 0.0;
    }
    const Eigen::MatrixXcd tau = w.transpose() * yy * w;
    const Eigen::VectorXd l = Eigen::JacobiSVD<Eigen::MatrixXcd>(tau).singularValues();
    return std::max(0.0, l(0) - (l.sum() - l(0)));
}

PairStats pair_stats(const Mat4 &rho) {
    PairStats s;
    s.correlation = correlation(rho);
    s.concurrence = concurrence(rho);
    s.pair_linear_entropy = (4.0 / 3.0) * (1.0 - purity(rho));
    s.pair_von_neumann_entropy = von_neumann_entropy(density_eigenvalues(rho));
    return s;
}

HalfMatrix half_matrix(const StateVector &state) {
    const int n = state.num_qubits();
    if (n < 2) {
        throw ValidationError("half-matrix needs at least two qubits");
    }
    HalfMatrix h;
    h.n = n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            PairStats s = pair_stats(partial_trace_pair(state, i, j));
            s.wire_i = i;
            s.wire_j = j;
            h.cells.push_back(s);
        }
    }
    return h;
}

std::string_view to_string(BarMode mode) {
    switch (mode) {
    case BarMode::Probability:
        return "probability";
    case BarMode::Magnitude:
        return "magnitude";
    case BarMode::Log:
        return "log";
    }
    return "";
}

BarMode parse_bar_mode(std::string_view text) {
    for (auto m : {BarMode::Probability, BarMode::Magnitude, BarMode::Log}) {
        if (to_string(m) == text) {
            return m;
        }
    }
    throw ValidationError("unknown bar mode '" + std::string(text) + "'");
}

double bar_length(double p, BarMode mode, int decades) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-12)) {
        throw ValidationError("probability outside [0, 1]");
    }
    if (decades < 1) {
        throw ValidationError("decades must be positive");
    }
    p = std::min(p, 1.0);
    switch (mode) {
    case BarMode::Probability:
        return p;
    case BarMode::Magnitude:
        return std::sqrt(p);
    case BarMode::Log:
        return p == 0.0 ? 0.0 : std::max(0.0, 1.0 + std::log10(p) / decades);
    }
    return 0.0;
}

} // namespace qdiff
