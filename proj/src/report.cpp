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
#include "qdiff/report.hpp"

#include "qdiff/simulator.hpp"

namespace qdiff {

namespace {

Json indices(const std::vector<Index> &v) {
    Json a = Json::array();
    for (Index k : v) {
        a.push_back(k);
    }
    return a;
}

Json partition_fields(Json j, const AmplitudePartition &p) {
    j["even"] = indices(p.even);
    j["odd"] = indices(p.odd);
    j["even_color"] = to_string(Color::Purple);
    j["odd_color"] = to_string(Color::Green);
    return j;
}

struct ToJson {
    Json operator()(const Rotation &r) const {
        Json j;
        j["type"] = "rotation";
        j["subset"] = indices(r.subset);
        j["angle"] = r.angle;
        j["raw_angle"] = r.raw_angle;
        j["color"] = to_string(r.color);
        return j;
    }
    Json operator()(const DualRotation &d) const {
        Json j;
        j["type"] = "dual_rotation";
        j = partition_fields(std::move(j), d.partition);
        j["angle_even"] = d.angle_even;
        j["angle_odd"] = d.angle_odd;
        j["raw_angle_even"] = d.raw_angle_even;
        j["raw_angle_odd"] = d.raw_angle_odd;
        j["exchange"] = d.exchange;
        return j;
    }
    Json operator()(const Butterfly &b) const {
        Json j;
        j["type"] = "butterfly";
        j = partition_fields(std::move(j), b.partition);
        j["angle_even"] = b.angle_even;
        j["angle_odd"] = b.angle_odd;
        j["raw_angle_even"] = b.raw_angle_even;
        j["raw_angle_odd"] = b.raw_angle_odd;
        j["even_op"] = "add";
        j["odd_op"] = "subtract";
        j["scale"] = 1.0 / std::sqrt(2.0);
        return j;
    }
    Json operator()(const SwapPairs &s) const {
        Json j;
        j["type"] = "swap_pairs";
        j["wires"] = {s.wire_i, s.wire_j};
        Json pairs = Json::array();
        for (const auto &[a, b] : s.pairs) {
            pairs.push_back({a, b});
        }
        j["pairs"] = std::move(pairs);
        j["layout_class"] = to_string(s.layout_class);
        return j;
    }
    Json operator()(const Unsupported &) const { return nullptr; }
};

} // namespace

Json annotation_to_json(const LayerAnnotation &a) { return std::visit(ToJson{}, a); }

Json qubit_stats_to_json(int wire, const QubitStats &s) {
    Json j;
    j["wire"] = wire;
    j["prob_one"] = s.prob_one;
    j["phase"] = s.phase ? Json(*s.phase) : Json(nullptr);
    j["purity"] = s.purity;
    j["linear_entropy"] = s.linear_entropy;
    j["von_neumann_entropy"] = s.von_neumann_entropy;
    return j;
}

Json half_matrix_to_json(const HalfMatrix &h) {
    Json j;
    j["n"] = h.n;
    j["mixedness_metrics"] = {"pair_linear_entropy", "pair_von_neumann_entropy"};
    j["relationship_metrics"] = {"correlation", "concurrence"};
    Json cells = Json::array();
    for (const auto &c : h.cells) {
        Json cell;
        cell["i"] = c.wire_i;
        cell["j"] = c.wire_j;
        cell["correlation"] = c.correlation;
        cell["concurrence"] = c.concurrence;
        cell["pair_linear_entropy"] = c.pair_linear_entropy;
        cell["pair_von_neumann_entropy"] = c.pair_von_neumann_entropy;
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    return j;
}

void require_valid(const Circuit &circuit) {
    const auto violations = validate(circuit);
    if (violations.empty()) {
        return;
    }
    std::string msg = "invalid circuit:";
    for (const auto &v : violations) {
        msg += "\n  ";
        if (v.layer >= 0) {
            msg += "layer " + std::to_string(v.layer) + ": ";
        }
        msg += v.reason;
    }
    throw ValidationError(msg);
}

Json build_report(const Circuit &source, const ReportOptions &options) {
    require_valid(source);
    if (options.decades < 1) {
        throw ValidationError("decades must be positive");
    }
    Json warnings = Json::array();
    Circuit circuit = source;
    if (options.expand) {
        circuit = expand_circuit(source, *options.expand);
        for (auto &w : expansion_warnings(source, *options.expand)) {
            warnings.push_back(std::move(w));
        }
    }
    const int n = circuit.num_wires;
    const GridLayout layout =
        options.layout_k ? make_layout(n, *options.layout_k) : default_layout(n);

    const auto states = simulate(circuit);

    Json report;
    report["schema_version"] = kSchemaVersion;
    report["circuit"] = serialize_circuit(circuit);
    report["source_circuit"] = options.expand ? Json(serialize_circuit(source)) : Json(nullptr);
    report["n"] = n;
    report["K"] = layout.k;
    report["grid"] = {{"rows", layout.rows()}, {"cols", layout.cols()}};

    Json opts;
    opts["bars"] = to_string(options.bars);
    opts["decades"] = options.decades;
    opts["expand"] = options.expand
                         ? Json(options.expand->use_generalized ? "generalized" : "basic")
                         : Json(nullptr);
    opts["keep_global_phase"] = options.expand ? options.expand->keep_global_phase : true;
    report["options"] = std::move(opts);

    Json layers = Json::array();
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto &s = states[k];
        Json rec;
        rec["index"] = k;
        const bool has_gate = k < circuit.layers.size();
        rec["gate_layer"] = has_gate ? Json(k) : Json(nullptr);

        Json amps = Json::array();
        Json probs = Json::array();
        Json bars = Json::array();
        for (Index i = 0; i < s.size(); ++i) {
            const cplx a = s[i];
            const double p = std::norm(a);
            amps.push_back({a.real(), a.imag()});
            probs.push_back(p);
            bars.push_back(bar_length(std::min(p, 1.0), options.bars, options.decades));
        }
        rec["amplitudes"] = std::move(amps);
        rec["probabilities"] = std::move(probs);
        rec["bar_lengths"] = std::move(bars);

        if (has_gate) {
            const auto a = annotate_layer(circuit, k, layout);
            rec["annotation"] = annotation_to_json(a);
            const auto *u = std::get_if<Unsupported>(&a);
            rec["unsupported_reason"] = u ? Json(u->reason) : Json(nullptr);
        } else {
            rec["annotation"] = nullptr;
            rec["unsupported_reason"] = nullptr;
        }

        Json qs = Json::array();
        const auto stats = all_qubit_stats(s);
        for (std::size_t q = 0; q < stats.size(); ++q) {
            qs.push_back(qubit_stats_to_json(static_cast<int>(q), stats[q]));
        }
        rec["qubit_stats"] = std::move(qs);
        layers.push_back(std::move(rec));
    }
    report["layers"] = std::move(layers);
    report["half_matrix"] = n >= 2 ? half_matrix_to_json(half_matrix(states.back())) : Json(nullptr);
    report["warnings"] = std::move(warnings);
    return report;
}

std::string dump_report(const Json &report, bool pretty) {
    return report.dump(pretty ? 2 : -1) + "\n";
}

} // namespace qdiff
