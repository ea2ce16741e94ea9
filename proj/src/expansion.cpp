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
#include "qdiff/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdiff {

namespace {

using K = GateKind;

Gate g(K k) { return Gate::of(k); }
Gate g(K k, double a) { return Gate::of(k, a); }
Gate g(K k, double a, double b) { return Gate::of(k, a, b); }

// Operator product exactly as written, left factor applied last.
std::vector<Gate> basic_rule(const Gate &gate) {
    const double t = gate.params[0];
    switch (gate.kind) {
    case K::SqrtX:
        return {g(K::H), g(K::S), g(K::H)};
    case K::SqrtXdg:
        return {g(K::H), g(K::Sdg), g(K::H)};
    case K::SqrtY:
        return {g(K::H), g(K::Z), g(K::GlobalPhase, kPi / 4)};
    case K::SqrtYdg:
        return {g(K::Z), g(K::H), g(K::GlobalPhase, -kPi / 4)};
    case K::XPow:
        return {g(K::H), g(K::ZPow, t), g(K::H)};
    case K::YPow:
        return {g(K::H), g(K::Sdg), g(K::H), g(K::ZPow, t), g(K::H), g(K::S), g(K::H)};
    case K::RX:
        return {g(K::H), g(K::ZPow, t / kPi), g(K::H), g(K::GlobalPhase, -t / 2)};
    case K::RY:
        return {g(K::H),           g(K::Sdg), g(K::H), g(K::ZPow, t / kPi),
                g(K::H),           g(K::S),   g(K::H), g(K::GlobalPhase, -t / 2)};
    case K::RZ:
        return {g(K::ZPow, t / kPi), g(K::GlobalPhase, -t / 2)};
    default:
        throw Error("no expansion rule for " + std::string(gate_name(gate.kind)));
    }
}

std::vector<Gate> generalized_rule(const Gate &gate) {
    const double t = gate.params[0];
    switch (gate.kind) {
    case K::SqrtX:
        return {g(K::HG, 0, kPi / 2), g(K::H)};
    case K::SqrtXdg:
        return {g(K::HG, 0, -kPi / 2), g(K::H)};
    case K::SqrtY:
        return {g(K::HG, kPi / 4, 5 * kPi / 4)};
    case K::SqrtYdg:
        return {g(K::ZG, -kPi / 4, -5 * kPi / 4), g(K::H)};
    case K::XPow:
        return {g(K::HG, 0, t * kPi), g(K::H)};
    case K::YPow:
        return {g(K::HG, 0, -kPi / 2), g(K::HG, 0, t * kPi), g(K::HG, 0, kPi / 2), g(K::H)};
    case K::RX:
        return {g(K::HG, 0, t), g(K::HG, -t / 2, -t / 2)};
    case K::RY:
        return {g(K::HG, 0, -kPi / 2), g(K::HG, 0, t), g(K::HG, 0, kPi / 2),
                g(K::HG, -t / 2, -t / 2)};
    case K::RZ:
        return {g(K::ZG, -t / 2, t / 2)};
    default:
        throw Error("no expansion rule for " + std::string(gate_name(gate.kind)));
    }
}

} // namespace

ExpansionResult expand_gate(const GatePlacement &gate, ExpansionMode mode) {
    ExpansionResult r;
    if (is_core(gate.gate.kind)) {
        r.gates.push_back(gate);
        r.cost = 1;
        return r;
    }
    if (gate.targets.size() != 1) {
        throw ValidationError("expansion needs a single-target gate");
    }
    auto product = mode.use_generalized ? generalized_rule(gate.gate) : basic_rule(gate.gate);
    std::reverse(product.begin(), product.end());
    std::stable_partition(product.begin(), product.end(),
                          [](const Gate &x) { return x.kind != K::GlobalPhase; });

    for (const auto &factor : product) {
        if (factor.kind == K::GlobalPhase && !mode.keep_global_phase) {
            if (gate.controls.empty()) {
                continue;
            }
            r.warnings.push_back("kept controlled " + gate_token(factor) + " from " +
                                 gate_token(gate.gate) +
                                 ": with controls it changes the unitary");
        }
        r.gates.push_back({factor, gate.targets, gate.controls});
    }
    r.cost = static_cast<int>(r.gates.size());
    return r;
}

Circuit expand_circuit(const Circuit &circuit, ExpansionMode mode) {
    Circuit out;
    out.num_wires = circuit.num_wires;
    for (const auto &layer : circuit.layers) {
        const bool all_core = std::all_of(layer.gates.begin(), layer.gates.end(),
                                          [](const auto &p) { return is_core(p.gate.kind); });
        if (all_core) {
            out.layers.push_back(layer);
            continue;
        }
        for (const auto &p : layer.gates) {
            for (auto &q : expand_gate(p, mode).gates) {
                out.layers.push_back(Layer{{std::move(q)}});
            }
        }
    }
    return out;
}

std::vector<std::string> expansion_warnings(const Circuit &circuit, ExpansionMode mode) {
    std::vector<std::string> out;
    for (std::size_t li = 0; li < circuit.layers.size(); ++li) {
        for (const auto &p : circuit.layers[li].gates) {
            if (is_core(p.gate.kind)) {
                continue;
            }
            for (auto &w : expand_gate(p, mode).warnings) {
                out.push_back("layer " + std::to_string(li) + ": " + w);
            }
        }
    }
    return out;
}

Mat2 sequence_matrix(const std::vector<GatePlacement> &gates) {
    Mat2 m = Mat2::Identity();
    for (const auto &p : gates) {
        m = gate_matrix(p.gate) * m;
    }
    return m;
}

double verify_expansion(const GatePlacement &gate, const ExpansionResult &result,
                        bool keep_global_phase) {
    if (gate.gate.kind == K::Swap) {
        const bool same = result.gates.size() == 1 && result.gates.front() == gate;
        return same ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const Mat2 target = gate_matrix(gate.gate);
    Mat2 product = sequence_matrix(result.gates);
    if (!keep_global_phase) {
        Eigen::Index r = 0;
        Eigen::Index c = 0;
        target.cwiseAbs().maxCoeff(&r, &c);
        const cplx p = product(r, c);
        if (std::abs(p) > 0.0) {
            product *= std::polar(1.0, std::arg(target(r, c)) - std::arg(p));
        }
    }
    const Eigen::JacobiSVD<Mat2> svd(product - target);
    return svd.singularValues()(0);
}

} // namespace qdiff
