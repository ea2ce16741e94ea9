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
 * Gate vocabulary, circuit structure and the text format.
 *
 * A circuit is written as JSON, one array of tokens per column:
 *
 *     {"wires":2,"cols":[["H"],["C","X"]]}
 *
 * Tokens: "-" (empty), "C" (control), "A" (anticontrol), "H", "X", "Y",
 * "Z", "S", "Sdg", "T", "Tdg", "SWAP", "SX", "SXdg", "SY", "SYdg" and the
 * parametric forms "Z^(k)", "X^(k)", "Y^(k)", "P(t)", "GP(t)", "RX(t)",
 * "RY(t)", "RZ(t)", "ZG(a,b)", "YG(a,b)", "HG(a,b)". Angles are radians;
 * a "deg" suffix converts from degrees. Controls in a column apply to every
 * gate in that column.
 */
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qdiff/types.hpp"

namespace qdiff {

enum class GateKind {
    // core set
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    ZPow,
    Phase,
    GlobalPhase,
    Swap,
    ZG,
    YG,
    HG,
    // non-core set
    XPow,
    YPow,
    SqrtX,
    SqrtXdg,
    SqrtY,
    SqrtYdg,
    RX,
    RY,
    RZ,
};

/// Core gates can be annotated directly; the rest need expansion first.
[[nodiscard]] bool is_core(GateKind kind);
[[nodiscard]] int param_count(GateKind kind);
/// Token stem without parameters, e.g. "Z^" or "HG".
[[nodiscard]] std::string_view gate_name(GateKind kind);

struct Gate {
    GateKind kind = GateKind::H;
    std::array<double, 2> params{0.0, 0.0};

    [[nodiscard]] bool annotatable() const { return is_core(kind); }

    friend bool operator==(const Gate &, const Gate &) = default;

    static Gate of(GateKind k) { return Gate{k, {0.0, 0.0}}; }
    static Gate of(GateKind k, double a) { return Gate{k, {a, 0.0}}; }
    static Gate of(GateKind k, double a, double b) { return Gate{k, {a, b}}; }
};

struct GatePlacement {
    Gate gate;
    std::vector<int> targets; // one wire, two for SWAP
    ControlSpec controls;

    friend bool operator==(const GatePlacement &, const GatePlacement &) = default;
};

struct Layer {
    std::vector<GatePlacement> gates;

    friend bool operator==(const Layer &, const Layer &) = default;
};

struct Circuit {
    int num_wires = 1;
    std::vector<Layer> layers;

    [[nodiscard]] std::size_t depth() const { return layers.size(); }

    friend bool operator==(const Circuit &, const Circuit &) = default;
};

/// 2x2 unitary of a single-target gate. GlobalPhase yields e^{i theta} I.
/// Throws ValidationError for SWAP, which has no 2x2 form.
[[nodiscard]] Mat2 gate_matrix(const Gate &gate);

/// Canonical token text, e.g. "P(2.0943951023931953)".
[[nodiscard]] std::string gate_token(const Gate &gate);
[[nodiscard]] Gate parse_gate_token(std::string_view token);

[[nodiscard]] Circuit parse_circuit(std::string_view text);
/// Accepts the JSON form or a percent-encoded "circuit=" query parameter
/// (optionally preceded by a URL up to '?').
[[nodiscard]] Circuit parse_circuit_source(std::string_view text);
[[nodiscard]] std::string serialize_circuit(const Circuit &circuit);
[[nodiscard]] std::string to_query_string(const Circuit &circuit);

[[nodiscard]] std::string percent_encode(std::string_view text);
[[nodiscard]] std::string percent_decode(std::string_view text);

struct Violation {
    int layer = -1; // -1 for circuit-level problems
    std::vector<int> wires;
    std::string reason;
};

[[nodiscard]] std::vector<Violation> validate(const Circuit &circuit);

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_real(double value);

} // namespace qdiff
