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
 * Dense state vector with matrix-free gate kernels and partial traces.
 *
 * Amplitude index convention: wire j contributes 2^j to the basis index,
 * wire 0 is the top wire. A printed bitstring is b_{n-1}...b_0, so the
 * bottom wire is the left-most character.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "qdiff/types.hpp"

namespace qdiff {

namespace detail {

/// Insert a zero bit at position `bit`, shifting the higher bits up.
constexpr Index insert_zero_bit(Index k, int bit) {
    const Index low = (Index{1} << bit) - 1;
    return ((k >> bit) << (bit + 1)) | (k & low);
}

inline void check_wire(int wire, int n, const char *what) {
    if (wire < 0 || wire >= n) {
        throw ValidationError(std::string(what) + " wire " +
                              std::to_string(wire) + " out of range for " +
                              std::to_string(n) + " qubits");
    }
}

/// Controls must be in range, pairwise distinct and disjoint from `used`.
inline void check_controls(const ControlSpec &controls, int n, Index used) {
    for (const auto &c : controls) {
        check_wire(c.wire, n, "control");
        const Index bit = Index{1} << c.wire;
        if (used & bit) {
            throw ValidationError("wire " + std::to_string(c.wire) +
                                  " used more than once by the same gate");
        }
        used |= bit;
    }
}

/// 1e-9 in double precision, looser for narrower scalars.
template <typename Scalar> constexpr Scalar unitarity_tolerance() {
    return std::max(Scalar(1e-9), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
}

template <typename Scalar>
bool is_unitary(const Matrix2c<Scalar> &m, Scalar tol) {
    const Matrix2c<Scalar> d = m.adjoint() * m - Matrix2c<Scalar>::Identity();
    return d.cwiseAbs().maxCoeff() <= tol;
}

} // namespace detail

/**
 * 2^n complex amplitudes for an n-qubit register, 1 <= n <= 16.
 *
 * Values are immutable; every gate application returns a new vector.
 * The norm is never renormalized.
 */
template <typename Scalar> class BasicStateVector {
  public:
    using Vector = VectorXc<Scalar>;

    struct unchecked_t {};
    static constexpr unchecked_t unchecked{};

    /// Basis state from a printed bitstring (bottom wire first).
    static BasicStateVector basis(int num_qubits, std::string_view bits) {
        check_width(num_qubits);
        if (bits.size() != static_cast<std::size_t>(num_qubits)) {
            throw ValidationError("bitstring length " +
                                  std::to_string(bits.size()) +
                                  " does not match qubit count " +
                                  std::to_string(num_qubits));
        }
        Index k = 0;
        for (char ch : bits) {
            if (ch != '0' && ch != '1') {
                throw ValidationError("bitstring may only contain 0 and 1");
            }
            k = (k << 1) | static_cast<Index>(ch - '0');
        }
        return basis(num_qubits, k);
    }

    static BasicStateVector basis(int num_qubits, Index k) {
        check_width(num_qubits);
        Vector v = Vector::Zero(Eigen::Index{1} << num_qubits);
        if (k >= static_cast<Index>(v.size())) {
            throw ValidationError("basis index out of range");
        }
        v(static_cast<Eigen::Index>(k)) = Scalar{1};
        return BasicStateVector(unchecked, num_qubits, std::move(v));
    }

    static BasicStateVector zero(int num_qubits) { return basis(num_qubits, Index{0}); }

    /// Checked construction: length must be 2^n and the norm 1 within `tol`.
    static BasicStateVector from_amplitudes(Vector amplitudes, Scalar tol = Scalar(1e-9)) {
        const auto len = static_cast<Index>(amplitudes.size());
        if (len < 2 || (len & (len - 1)) != 0) {
            throw ValidationError("amplitude count must be a power of two >= 2");
        }
        int n = 0;
        while ((Index{1} << n) < len) {
            ++n;
        }
        check_width(n);
        if (!amplitudes.allFinite()) {
            throw ValidationError("non-finite amplitude");
        }
        const Scalar drift = std::abs(amplitudes.squaredNorm() - Scalar{1});
        if (drift > tol) {
            throw NormDriftError("squared norm deviates from 1 by " + std::to_string(drift));
        }
        return BasicStateVector(unchecked, n, std::move(amplitudes));
    }

    /// For kernels that preserve the norm by construction.
    BasicStateVector(unchecked_t, int num_qubits, Vector amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] Index size() const { return static_cast<Index>(amplitudes_.size()); }
    [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] Complex<Scalar> operator[](Index k) const {
        return amplitudes_(static_cast<Eigen::Index>(k));
    }
    [[nodiscard]] Scalar squared_norm() const { return amplitudes_.squaredNorm(); }

    /// Probability of each basis state.
    [[nodiscard]] Eigen::Matrix<Scalar, Eigen::Dynamic, 1> probabilities() const {
        return amplitudes_.cwiseAbs2();
    }

  private:
    static void check_width(int n) {
        if (n < 1 || n > kMaxQubits) {
            throw ValidationError("qubit count " + std::to_string(n) +
                                  " outside supported range [1, " +
                                  std::to_string(kMaxQubits) + "]");
        }
    }

    int num_qubits_;
    Vector amplitudes_;
};

using StateVector = BasicStateVector<double>;

/// Matrix-free application of a (possibly controlled) single-qubit gate.
/// Each amplitude pair differing only in the target bit is multiplied by
/// `m` when the control bits match; the cost is O(2^n).
template <typename Scalar>
BasicStateVector<Scalar> apply_single_qubit_gate(const BasicStateVector<Scalar> &state,
                                                 const Matrix2c<Scalar> &m, int target,
                                                 const ControlSpec &controls = {}) {
    const int n = state.num_qubits();
    detail::check_wire(target, n, "target");
    detail::check_controls(controls, n, Index{1} << target);
    if (!detail::is_unitary(m, detail::unitarity_tolerance<Scalar>())) {
        throw ValidationError("gate matrix is not unitary");
    }

    auto v = state.amplitudes();
    const ControlMask ctl = control_mask(controls);
    const Index bit = Index{1} << target;
    const Index half = state.size() >> 1;
    const auto m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (Index k = 0; k < half; ++k) {
        const Index i0 = detail::insert_zero_bit(k, target);
        if (!ctl.matches(i0)) {
            continue;
        }
        const auto e0 = static_cast<Eigen::Index>(i0);
        const auto e1 = static_cast<Eigen::Index>(i0 | bit);
        const auto a0 = v(e0);
        const auto a1 = v(e1);
        v(e0) = m00 * a0 + m01 * a1;
        v(e1) = m10 * a0 + m11 * a1;
    }
    return {BasicStateVector<Scalar>::unchecked, n, std::move(v)};
}

/// Multiplies every control-matching amplitude by e^{i theta}.
template <typename Scalar>
BasicStateVector<Scalar> apply_global_phase(const BasicStateVector<Scalar> &state, Scalar theta,
                                            const ControlSpec &controls = {}) {
    const int n = state.num_qubits();
    detail::check_controls(controls, n, 0);
    auto v = state.amplitudes();
    const ControlMask ctl = control_mask(controls);
    const Complex<Scalar> phase = std::polar(Scalar{1}, theta);
    for (Index k = 0; k < state.size(); ++k) {
        if (ctl.matches(k)) {
            v(static_cast<Eigen::Index>(k)) *= phase;
        }
    }
    return {BasicStateVector<Scalar>::unchecked, n, std::move(v)};
}

/// Exchanges the amplitudes of (bit_j=0, bit_i=1) and (bit_j=1, bit_i=0)
/// for every control-matching pair.
template <typename Scalar>
BasicStateVector<Scalar> apply_swap(const BasicStateVector<Scalar> &state, int i, int j,
                                    const ControlSpec &controls = {}) {
    const int n = state.num_qubits();
    detail::check_wire(i, n, "swap");
    detail::check_wire(j, n, "swap");
    if (i == j) {
        throw ValidationError("SWAP needs two distinct wires");
    }
    detail::check_controls(controls, n, (Index{1} << i) | (Index{1} << j));
    if (i > j) {
        std::swap(i, j);
    }
    auto v = state.amplitudes();
    const ControlMask ctl = control_mask(controls);
    const Index bi = Index{1} << i;
    const Index bj = Index{1} << j;
    const Index quarter = state.size() >> 2;
    for (Index k = 0; k < quarter; ++k) {
        const Index base = detail::insert_zero_bit(detail::insert_zero_bit(k, i), j);
        if (!ctl.matches(base)) {
            continue;
        }
        std::swap(v(static_cast<Eigen::Index>(base | bi)),
                  v(static_cast<Eigen::Index>(base | bj)));
    }
    return {BasicStateVector<Scalar>::unchecked, n, std::move(v)};
}

/// 2x2 reduced density matrix of wire `q`:
/// rho_ab = sum_k psi(k, q=a) conj(psi(k, q=b)) over the other bits.
template <typename Scalar>
Matrix2c<Scalar> partial_trace_single(const BasicStateVector<Scalar> &state, int q) {
    detail::check_wire(q, state.num_qubits(), "trace");
    const auto &v = state.amplitudes();
    const Index bit = Index{1} << q;
    Matrix2c<Scalar> rho = Matrix2c<Scalar>::Zero();
    for (Index k = 0; k < (state.size() >> 1); ++k) {
        const Index i0 = detail::insert_zero_bit(k, q);
        const auto a0 = v(static_cast<Eigen::Index>(i0));
        const auto a1 = v(static_cast<Eigen::Index>(i0 | bit));
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 1) += a1 * std::conj(a1);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

/// 4x4 reduced density matrix of wires (low, high); row/column index is
/// 2*bit(high) + bit(low). Swapping the arguments permutes the basis.
template <typename Scalar>
Matrix4c<Scalar> partial_trace_pair(const BasicStateVector<Scalar> &state, int low, int high) {
    const int n = state.num_qubits();
    detail::check_wire(low, n, "trace");
    detail::check_wire(high, n, "trace");
    if (low == high) {
        throw ValidationError("pair partial trace needs two distinct wires");
    }
    const auto &v = state.amplitudes();
    const int lo = std::min(low, high);
    const int hi = std::max(low, high);
    const Index b_low = Index{1} << low;
    const Index b_high = Index{1} << high;
    const std::array<Index, 4> offset{0, b_low, b_high, b_low | b_high};

    Matrix4c<Scalar> rho = Matrix4c<Scalar>::Zero();
    std::array<Complex<Scalar>, 4> a;
    for (Index k = 0; k < (state.size() >> 2); ++k) {
        const Index base = detail::insert_zero_bit(detail::insert_zero_bit(k, lo), hi);
        for (int r = 0; r < 4; ++r) {
            a[r] = v(static_cast<Eigen::Index>(base | offset[r]));
        }
        for (int r = 0; r < 4; ++r) {
            for (int c = r; c < 4; ++c) {
                rho(r, c) += a[r] * std::conj(a[c]);
            }
        }
    }
    for (int r = 0; r < 4; ++r) {
        rho(r, r) = rho(r, r).real();
        for (int c = 0; c < r; ++c) {
            rho(r, c) = std::conj(rho(c, r));
        }
    }
    return rho;
}

/// Printed bitstring b_{n-1}...b_0 of a basis index.
inline std::string bitstring(Index k, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int w = 0; w < num_qubits; ++w) {
        if ((k >> w) & 1U) {
            s[static_cast<std::size_t>(num_qubits - 1 - w)] = '1';
        }
    }
    return s;
}

} // namespace qdiff
