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
 * Rewrites non-core single-qubit gates into sequences of core gates.
 *
 * Two rule tables exist: a basic one using only H, S, Z^k and GlobalPhase,
 * and a shorter one using the generalized ZG/HG gates. Rules are stored as
 * operator products (left factor applied last) and emitted in circuit time
 * order, so the right-most factor becomes the first layer. GlobalPhase
 * factors commute with everything sharing their controls and are always
 * emitted last.
 */
#pragma once

#include <string>
#include <vector>

#include "qdiff/circuit.hpp"

namespace qdiff {

struct ExpansionMode {
    bool use_generalized = false;
    bool keep_global_phase = true;
};

struct ExpansionResult {
    std::vector<GatePlacement> gates; // circuit time order
    int cost = 0;                     // == gates.size()
    std::vector<std::string> warnings;
};

/// Core gates pass through unchanged with cost 1. Every emitted gate
/// carries a copy of the original controls. A controlled GlobalPhase is
/// never dropped, since it is not a global phase; a warning is recorded
/// instead.
[[nodiscard]] ExpansionResult expand_gate(const GatePlacement &gate, ExpansionMode mode);

/// Replaces every non-core placement by its expansion, one gate per layer.
/// Layers without non-core gates are copied through untouched; a layer
/// mixing several gates with a non-core one is split into one layer per gate.
[[nodiscard]] Circuit expand_circuit(const Circuit &circuit, ExpansionMode mode);

/// Warnings expand_circuit would produce for this circuit.
[[nodiscard]] std::vector<std::string> expansion_warnings(const Circuit &circuit,
                                                          ExpansionMode mode);

/// Spectral norm of (product of the expansion's 2x2 matrices - original).
/// With keep_global_phase false the product is first rotated so that the
/// original's largest-magnitude entry agrees in phase.
[[nodiscard]] double verify_expansion(const GatePlacement &gate, const ExpansionResult &result,
                                      bool keep_global_phase);

/// Ordered matrix product of a gate list given in circuit time order.
[[nodiscard]] Mat2 sequence_matrix(const std::vector<GatePlacement> &gates);

} // namespace qdiff
