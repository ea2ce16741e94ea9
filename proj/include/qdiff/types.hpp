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
#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdiff {

using Index = std::uint64_t;

template <typename Scalar> using Complex = std::complex<Scalar>;
template <typename Scalar>
using VectorXc = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar> using Matrix2c = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar> using Matrix4c = Eigen::Matrix<Complex<Scalar>, 4, 4>;

using cplx = Complex<double>;
using Mat2 = Matrix2c<double>;
using Mat4 = Matrix4c<double>;

inline constexpr double kPi = std::numbers::pi;

/// Largest supported register width.
inline constexpr int kMaxQubits = 16;

enum class Polarity { Control, Anticontrol };

struct Control {
    int wire = 0;
    Polarity polarity = Polarity::Control;

    friend bool operator==(const Control &, const Control &) = default;
};

using ControlSpec = std::vector<Control>;

/// Bit pattern a basis index must match for a control set to be satisfied:
/// `(index & mask) == value`.
struct ControlMask {
    Index mask = 0;
    Index value = 0;

    [[nodiscard]] bool matches(Index k) const { return (k & mask) == value; }
};

inline ControlMask control_mask(const ControlSpec &controls) {
    ControlMask m;
    for (const auto &c : controls) {
        const Index bit = Index{1} << c.wire;
        m.mask |= bit;
        if (c.polarity == Polarity::Control) {
            m.value |= bit;
        }
    }
    return m;
}

/// Base error for every recoverable failure raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad circuit text: syntax, unknown tokens or malformed parameters.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    [[nodiscard]] std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Structural problems: wire collisions, widths, non-unitary input.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// The state vector norm drifted beyond tolerance.
class NormDriftError : public Error {
  public:
    using Error::Error;
};

} // namespace qdiff
