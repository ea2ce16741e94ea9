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
#include "qdiff/annotation.hpp"

#include <cmath>

namespace qdiff {

GridLayout make_layout(int n, int k) {
    if (n < 1 || n > kMaxQubits) {
        throw ValidationError("layout width out of range");
    }
    if (k < 0 || k > n) {
        throw ValidationError("layout column bits K=" + std::to_string(k) +
                              " must lie in [0, " + std::to_string(n) + "]");
    }
    return {n, k};
}

GridLayout default_layout(int n) { return make_layout(n, std::max(0, n - 4)); }

GridPosition layout_position(Index index, const GridLayout &layout) {
    if (index >= (Index{1} << layout.n)) {
        throw ValidationError("amplitude index out of range");
    }
    return {index >> layout.k, index & (layout.cols() - 1)};
}

std::string_view to_string(Color c) { return c == Color::Green ? "green" : "purple"; }

std::string_view to_string(LayoutClass c) {
    switch (c) {
    case LayoutClass::SameColumn:
        return "same_column";
    case LayoutClass::SameRow:
        return "same_row";
    case LayoutClass::Diagonal:
        return "diagonal";
    }
    return "";
}

LayoutClass swap_layout_class(int i, int j, const GridLayout &layout) {
    if (i == j) {
        throw ValidationError("SWAP needs two distinct wires");
    }
    if (i > j) {
        std::swap(i, j);
    }
    if (layout.k <= i) {
        return LayoutClass::SameColumn;
    }
    if (j < layout.k) {
        return LayoutClass::SameRow;
    }
    return LayoutClass::Diagonal;
}

std::vector<Index> affected_set(int n, const ControlSpec &controls) {
    detail::check_controls(controls, n, 0);
    const ControlMask ctl = control_mask(controls);
    std::vector<Index> out;
    out.reserve(std::size_t{1} << (n - static_cast<int>(controls.size())));
    for (Index k = 0; k < (Index{1} << n); ++k) {
        if (ctl.matches(k)) {
            out.push_back(k);
        }
    }
    return out;
}

AmplitudePartition even_odd_partition(int n, int target, const ControlSpec &controls) {
    detail::check_wire(target, n, "target");
    detail::check_controls(controls, n, Index{1} << target);
    const ControlMask ctl = control_mask(controls);
    const Index bit = Index{1} << target;
    AmplitudePartition p;
    for (Index k = 0; k < (Index{1} << n); ++k) {
        if (!ctl.matches(k)) {
            continue;
        }
        (k & bit ? p.odd : p.even).push_back(k);
    }
    return p;
}

double normalize_angle(double radians) {
    double r = std::remainder(radians, 2 * kPi);
    if (r <= -kPi) {
        r += 2 * kPi;
    }
    return r;
}

namespace {

Rotation odd_rotation(int n, const GatePlacement &p, double angle) {
    return {even_odd_partition(n, p.targets[0], p.controls).odd, normalize_angle(angle), angle,
            Color::Green};
}

DualRotation dual(int n, const GatePlacement &p, double a, double b, bool exchange) {
    return {even_odd_partition(n, p.targets[0], p.controls),
            normalize_angle(a),
            normalize_angle(b),
            a,
            b,
            exchange};
}

Butterfly butterfly(int n, const GatePlacement &p, double a, double b) {
    return {even_odd_partition(n, p.targets[0], p.controls), normalize_angle(a),
            normalize_angle(b), a, b};
}

} // namespace

LayerAnnotation annotate_placement(int n, const GatePlacement &p, const GridLayout &layout) {
    const double a = p.gate.params[0];
    const double b = p.gate.params[1];
    switch (p.gate.kind) {
    case GateKind::Z:
        return odd_rotation(n, p, kPi);
    case GateKind::S:
        return odd_rotation(n, p, kPi / 2);
    case GateKind::Sdg:
        return odd_rotation(n, p, -kPi / 2);
    case GateKind::T:
        return odd_rotation(n, p, kPi / 4);
    case GateKind::Tdg:
        return odd_rotation(n, p, -kPi / 4);
    case GateKind::ZPow:
        return odd_rotation(n, p, a * kPi);
    case GateKind::Phase:
        return odd_rotation(n, p, a);
    case GateKind::GlobalPhase:
        return Rotation{affected_set(n, p.controls), normalize_angle(a), a, Color::Green};
    case GateKind::X:
        return dual(n, p, 0, 0, true);
    case GateKind::Y:
        return dual(n, p, kPi / 2, -kPi / 2, true);
    case GateKind::ZG:
        return dual(n, p, a, b, false);
    case GateKind::YG:
        return dual(n, p, a, b, true);
    case GateKind::H:
        return butterfly(n, p, 0, 0);
    case GateKind::HG:
        return butterfly(n, p, a, b);
    case GateKind::Swap: {
        int i = p.targets.at(0);
        int j = p.targets.at(1);
        if (i > j) {
            std::swap(i, j);
        }
        detail::check_wire(i, n, "swap");
        detail::check_wire(j, n, "swap");
        detail::check_controls(p.controls, n, (Index{1} << i) | (Index{1} << j));
        SwapPairs s;
        s.wire_i = i;
        s.wire_j = j;
        s.layout_class = swap_layout_class(i, j, layout);
        const ControlMask ctl = control_mask(p.controls);
        const Index bi = Index{1} << i;
        const Index bj = Index{1} << j;
        for (Index k = 0; k < (Index{1} << n); ++k) {
            if ((k & bi) && !(k & bj) && ctl.matches(k)) {
                s.pairs.emplace_back(k, (k ^ bi) | bj);
            }
        }
        return s;
    }
    default:
        return Unsupported{"non-core gate " + gate_token(p.gate) + "; expand the circuit first"};
    }
}

LayerAnnotation annotate_layer(const Circuit &circuit, std::size_t layer_index,
                               const GridLayout &layout) {
    if (layer_index >= circuit.layers.size()) {
        throw ValidationError("layer index " + std::to_string(layer_index) + " out of range");
    }
    const auto &layer = circuit.layers[layer_index];
    if (layer.gates.empty()) {
        return Unsupported{"empty layer"};
    }
    if (layer.gates.size() > 1) {
        return Unsupported{"layer holds " + std::to_string(layer.gates.size()) +
                           " gates; highlighting needs one gate per layer"};
    }
    return annotate_placement(circuit.num_wires, layer.gates.front(), layout);
}

LayerAnnotation annotate_layer(const Circuit &circuit, std::size_t layer_index) {
    return annotate_layer(circuit, layer_index, default_layout(circuit.num_wires));
}

namespace {

struct Replay {
    StateVector::Vector v;

    void operator()(const Rotation &r) {
        const cplx phase = std::polar(1.0, r.angle);
        for (Index k : r.subset) {
            v(static_cast<Eigen::Index>(k)) *= phase;
        }
    }

    void operator()(const DualRotation &d) {
        const cplx pe = std::polar(1.0, d.angle_even);
        const cplx po = std::polar(1.0, d.angle_odd);
        const auto &even = d.partition.even;
        const auto &odd = d.partition.odd;
        for (std::size_t m = 0; m < even.size(); ++m) {
            const auto e = static_cast<Eigen::Index>(even[m]);
            const auto o = static_cast<Eigen::Index>(odd[m]);
            const cplx ae = pe * v(e);
            const cplx ao = po * v(o);
            v(e) = d.exchange ? ao : ae;
            v(o) = d.exchange ? ae : ao;
        }
    }

    void operator()(const Butterfly &b) {
        const double r = 1.0 / std::sqrt(2.0);
        const cplx pe = std::polar(1.0, b.angle_even);
        const cplx po = std::polar(1.0, b.angle_odd);
        const auto &even = b.partition.even;
        const auto &odd = b.partition.odd;
        for (std::size_t m = 0; m < even.size(); ++m) {
            const auto e = static_cast<Eigen::Index>(even[m]);
            const auto o = static_cast<Eigen::Index>(odd[m]);
            const cplx ae = pe * v(e);
            const cplx ao = po * v(o);
            v(e) = r * (ae + ao);
            v(o) = r * (ae - ao);
        }
    }

    void operator()(const SwapPairs &s) {
        for (const auto &[a, b] : s.pairs) {
            std::swap(v(static_cast<Eigen::Index>(a)), v(static_cast<Eigen::Index>(b)));
        }
    }

    void operator()(const Unsupported &u) {
        throw ValidationError("cannot replay an unsupported layer: " + u.reason);
    }
};

} // namespace

StateVector apply_annotation(const StateVector &state, const LayerAnnotation &a) {
    Replay replay{state.amplitudes()};
    std::visit(replay, a);
    return {StateVector::unchecked, state.num_qubits(), std::move(replay.v)};
}

} // namespace qdiff
