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
#include "qdiff/simulator.hpp"

#include <cmath>

namespace qdiff {

StateVector apply_placement(const StateVector &state, const GatePlacement &p) {
    switch (p.gate.kind) {
    case GateKind::Swap:
        if (p.targets.size() != 2) {
            throw ValidationError("SWAP needs two target wires");
        }
        return apply_swap(state, p.targets[0], p.targets[1], p.controls);
    case GateKind::GlobalPhase:
        // The target wire only anchors the gate in the diagram.
        if (p.targets.size() == 1) {
            detail::check_wire(p.targets[0], state.num_qubits(), "target");
        }
        return apply_global_phase(state, p.gate.params[0], p.controls);
    default:
        if (p.targets.size() != 1) {
            throw ValidationError("single-qubit gate needs one target wire");
        }
        return apply_single_qubit_gate(state, gate_matrix(p.gate), p.targets[0], p.controls);
    }
}

StateVector apply_layer(const StateVector &state, const Layer &layer) {
    StateVector out = state;
    for (const auto &p : layer.gates) {
        out = apply_placement(out, p);
    }
    return out;
}

void check_norm(const StateVector &state, std::size_t layer) {
    const double drift = std::abs(state.squared_norm() - 1.0);
    if (!(drift <= kNormTolerance)) {
        throw NormDriftError("norm drift " + std::to_string(drift) + " after layer " +
                             std::to_string(layer));
    }
}

std::vector<StateVector> simulate(const Circuit &circuit, StateVector initial) {
    if (initial.num_qubits() != circuit.num_wires) {
        throw ValidationError("initial state width does not match the circuit");
    }
    std::vector<StateVector> states;
    states.reserve(circuit.depth() + 1);
    states.push_back(std::move(initial));
    for (std::size_t k = 0; k < circuit.layers.size(); ++k) {
        states.push_back(apply_layer(states.back(), circuit.layers[k]));
        check_norm(states.back(), k);
    }
    return states;
}

std::vector<StateVector> simulate(const Circuit &circuit) {
    return simulate(circuit, StateVector::zero(circuit.num_wires));
}

StateVector final_state(const Circuit &circuit) {
    StateVector s = StateVector::zero(circuit.num_wires);
    for (std::size_t k = 0; k < circuit.layers.size(); ++k) {
        s = apply_layer(s, circuit.layers[k]);
        check_norm(s, k);
    }
    return s;
}

} // namespace qdiff
