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
#include "qdiff/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "qdiff/simulator.hpp"

namespace qdiff {

namespace {

constexpr const char *kGreen = "#1b9e3e";
constexpr const char *kPurple = "#8e44ad";
constexpr const char *kBlue = "#2f6fd6";
constexpr const char *kRed = "#d62f2f";
constexpr const char *kGrey = "#555555";

constexpr double kWireGap = 28.0;
constexpr double kCell = 26.0;
constexpr double kMargin = 20.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    return s == "-0.00" ? "0.00" : s;
}

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

class Svg {
  public:
    void line(double x1, double y1, double x2, double y2, const char *stroke,
              const std::string &cls = {}, double width = 1.0) {
        out_ += "<line" + cls_attr(cls) + " x1=\"" + num(x1) + "\" y1=\"" + num(y1) +
                "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke +
                "\" stroke-width=\"" + num(width) + "\"/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string &fill,
              const std::string &cls = {}, const std::string &extra = {}) {
        out_ += "<rect" + cls_attr(cls) + " x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" +
                num(w) + "\" height=\"" + num(h) + "\" fill=\"" + fill + "\"" + extra + "/>\n";
    }
    void circle(double cx, double cy, double r, const std::string &fill, const char *stroke,
                const std::string &cls = {}) {
        out_ += "<circle" + cls_attr(cls) + " cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
                "\" r=\"" + num(r) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
    }
    void text(double x, double y, const std::string &t, double size = 10.0,
              const std::string &cls = {}, const char *anchor = "middle") {
        out_ += "<text" + cls_attr(cls) + " x=\"" + num(x) + "\" y=\"" + num(y) +
                "\" font-size=\"" + num(size) + "\" text-anchor=\"" + anchor + "\">" +
                escape(t) + "</text>\n";
    }
    void path(const std::string &d, const char *stroke, const std::string &cls,
              const std::string &extra = {}) {
        out_ += "<path" + cls_attr(cls) + " d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
                "\"" + extra + "/>\n";
    }
    void open_group(const std::string &cls, const std::string &attrs = {}) {
        out_ += "<g" + cls_attr(cls) + attrs + ">\n";
    }
    void close_group() { out_ += "</g>\n"; }
    [[nodiscard]] const std::string &str() const { return out_; }

  private:
    static std::string cls_attr(const std::string &cls) {
        return cls.empty() ? std::string{} : " class=\"" + cls + "\"";
    }
    std::string out_;
};

// Arc around (cx, cy) sweeping `angle` radians, anticlockwise for positive.
std::string arc_path(double cx, double cy, double r, double angle) {
    const double sweep = std::clamp(angle, -2 * kPi + 1e-3, 2 * kPi - 1e-3);
    const double x0 = cx + r;
    const double y0 = cy;
    const double x1 = cx + r * std::cos(sweep);
    const double y1 = cy - r * std::sin(sweep);
    const int large = std::abs(sweep) > kPi ? 1 : 0;
    const int dir = sweep > 0 ? 0 : 1;
    return "M " + num(x0) + " " + num(y0) + " A " + num(r) + " " + num(r) + " 0 " +
           std::to_string(large) + " " + std::to_string(dir) + " " + num(x1) + " " + num(y1);
}

struct Geometry {
    int n;
    GridLayout layout;
    double column_width;
    double circuit_top;
    double states_top;
    double grid_w;
    double grid_h;

    double wire_y(int w) const { return circuit_top + kWireGap * (w + 0.5); }
    double column_x(std::size_t k) const {
        return kMargin + column_width * (static_cast<double>(k) + 0.5);
    }
    double cell_x(double origin, Index idx) const {
        return origin + kCell * static_cast<double>(layout_position(idx, layout).col);
    }
    double cell_y(Index idx) const {
        return states_top + kCell * static_cast<double>(layout_position(idx, layout).row);
    }
};

void draw_circuit(Svg &svg, const Circuit &c, const Geometry &g, std::size_t records) {
    svg.open_group("circuit");
    const double x_end = kMargin + g.column_width * static_cast<double>(records);
    for (int w = 0; w < g.n; ++w) {
        svg.line(kMargin, g.wire_y(w), x_end, g.wire_y(w), "#000000", "wire");
        svg.text(kMargin - 8, g.wire_y(w) + 3, "q" + std::to_string(w), 9.0, "wire-label");
    }
    for (std::size_t k = 0; k < c.layers.size(); ++k) {
        // Gates sit between state records k and k+1.
        const double x = g.column_x(k) + g.column_width / 2;
        for (const auto &p : c.layers[k].gates) {
            std::vector<int> wires = p.targets;
            for (const auto &ct : p.controls) {
                wires.push_back(ct.wire);
            }
            const auto [lo, hi] = std::minmax_element(wires.begin(), wires.end());
            if (*lo != *hi) {
                svg.line(x, g.wire_y(*lo), x, g.wire_y(*hi), "#000000", "control-line");
            }
            for (const auto &ct : p.controls) {
                const bool on = ct.polarity == Polarity::Control;
                svg.circle(x, g.wire_y(ct.wire), 4.0, on ? "#000000" : "#ffffff", "#000000",
                           on ? "control" : "anticontrol");
            }
            if (p.gate.kind == GateKind::Swap) {
                for (int t : p.targets) {
                    const double y = g.wire_y(t);
                    svg.line(x - 5, y - 5, x + 5, y + 5, "#000000", "swap-cross");
                    svg.line(x - 5, y + 5, x + 5, y - 5, "#000000", "swap-cross");
                }
                continue;
            }
            const double y = g.wire_y(p.targets.front());
            const std::string label = gate_token(p.gate);
            const double w = std::max(20.0, 5.5 * static_cast<double>(label.size()) + 6.0);
            svg.rect(x - w / 2, y - 10, w, 20, is_core(p.gate.kind) ? "#ffffff" : "#f2e6c9",
                     "gate", " stroke=\"#000000\"");
            svg.text(x, y + 3.5, label, 8.0, "gate-label");
        }
    }
    svg.close_group();
}

void draw_highlight(Svg &svg, const LayerAnnotation &a, const Geometry &g, double origin) {
    auto fill_cells = [&](const std::vector<Index> &cells, const char *color,
                          const std::string &cls) {
        for (Index idx : cells) {
            svg.rect(g.cell_x(origin, idx), g.cell_y(idx), kCell, kCell, color, cls,
                     " fill-opacity=\"0.35\"");
        }
    };
    const double ax = origin + g.grid_w + 4;
    const double ay = g.states_top + 10;
    if (const auto *r = std::get_if<Rotation>(&a)) {
        fill_cells(r->subset, kGreen, "highlight highlight-green");
        svg.path(arc_path(ax + 8, ay, 7, r->angle), kGreen, "rotation-arc",
                 " data-color=\"green\" data-angle=\"" + num(r->angle) + "\"");
        svg.text(ax + 8, ay + 18, num(r->angle), 7.0, "angle-label");
    } else if (const auto *d = std::get_if<DualRotation>(&a)) {
        fill_cells(d->partition.even, kPurple, "highlight highlight-purple");
        fill_cells(d->partition.odd, kGreen, "highlight highlight-green");
        if (d->angle_even != 0.0) {
            svg.path(arc_path(ax + 8, ay, 7, d->angle_even), kPurple, "rotation-arc",
                     " data-color=\"purple\" data-angle=\"" + num(d->angle_even) + "\"");
        }
        if (d->angle_odd != 0.0) {
            svg.path(arc_path(ax + 8, ay + 22, 7, d->angle_odd), kGreen, "rotation-arc",
                     " data-color=\"green\" data-angle=\"" + num(d->angle_odd) + "\"");
        }
        if (d->exchange) {
            svg.path("M " + num(ax) + " " + num(ay + 40) + " q 10 10 0 20", "#000000",
                     "exchange-arrow", " marker-start=\"url(#arrow)\" marker-end=\"url(#arrow)\"");
        }
    } else if (const auto *b = std::get_if<Butterfly>(&a)) {
        fill_cells(b->partition.even, kPurple, "highlight highlight-purple");
        fill_cells(b->partition.odd, kGreen, "highlight highlight-green");
        for (Index idx : b->partition.even) {
            svg.text(g.cell_x(origin, idx) + kCell - 5, g.cell_y(idx) + 8, "⊕", 7.0,
                     "butterfly-op");
        }
        for (Index idx : b->partition.odd) {
            svg.text(g.cell_x(origin, idx) + kCell - 5, g.cell_y(idx) + 8, "⊖", 7.0,
                     "butterfly-op");
        }
        if (b->angle_even != 0.0) {
            svg.path(arc_path(ax + 8, ay, 7, b->angle_even), kPurple, "rotation-arc",
                     " data-color=\"purple\"");
        }
        if (b->angle_odd != 0.0) {
            svg.path(arc_path(ax + 8, ay + 22, 7, b->angle_odd), kGreen, "rotation-arc",
                     " data-color=\"green\"");
        }
    } else if (const auto *s = std::get_if<SwapPairs>(&a)) {
        for (const auto &[p, q] : s->pairs) {
            const double x1 = g.cell_x(origin, p) + kCell / 2;
            const double y1 = g.cell_y(p) + kCell / 2;
            const double x2 = g.cell_x(origin, q) + kCell / 2;
            const double y2 = g.cell_y(q) + kCell / 2;
            svg.path("M " + num(x1) + " " + num(y1) + " L " + num(x2) + " " + num(y2),
                     "#000000", "swap-arrow",
                     " data-layout-class=\"" + std::string(to_string(s->layout_class)) +
                         "\" marker-start=\"url(#arrow)\" marker-end=\"url(#arrow)\"");
        }
    }
}

void draw_state(Svg &svg, const StateVector &s, const Geometry &g, double origin,
                const ReportOptions &opt) {
    for (Index idx = 0; idx < s.size(); ++idx) {
        const double x = g.cell_x(origin, idx);
        const double y = g.cell_y(idx);
        svg.rect(x, y, kCell, kCell, "none", "cell", " stroke=\"#bbbbbb\"");
        const double p = std::min(1.0, std::norm(s[idx]));
        const double bar = bar_length(p, opt.bars, opt.decades);
        if (bar > 0) {
            svg.rect(x + 2, y + kCell - 2 - bar * (kCell - 4), 4, bar * (kCell - 4), kBlue,
                     "prob-bar");
        }
        const double mag = std::abs(s[idx]);
        if (mag > 1e-9) {
            const double cx = x + kCell / 2 + 2;
            const double cy = y + kCell / 2;
            const double r = 2.0 + 7.0 * mag;
            svg.circle(cx, cy, r, "#dfe9fb", kBlue, "phase-disc");
            const double ang = std::arg(s[idx]);
            svg.line(cx, cy, cx + r * std::cos(ang), cy - r * std::sin(ang), kBlue,
                     "phase-tick");
        }
    }
}

void draw_qubit_stats(Svg &svg, const StateVector &s, const Geometry &g, double origin) {
    const auto stats = all_qubit_stats(s);
    const double top = g.states_top + g.grid_h + 8;
    for (std::size_t q = 0; q < stats.size(); ++q) {
        const double x = origin + 12.0 * static_cast<double>(q);
        svg.rect(x, top + 20 - 20 * stats[q].prob_one, 4, 20 * stats[q].prob_one, kBlue,
                 "qubit-prob");
        svg.rect(x + 5, top + 20 - 20 * stats[q].linear_entropy, 3,
                 20 * stats[q].linear_entropy, kGrey, "qubit-entropy");
    }
}

void draw_half_matrix(Svg &svg, const HalfMatrix &h, double x0, double y0) {
    svg.open_group("half-matrix");
    const double cell = 40.0;
    for (const auto &c : h.cells) {
        // Cell (i, j) sits in row j-1, column i.
        const double x = x0 + cell * c.wire_i;
        const double y = y0 + cell * (c.wire_j - 1);
        svg.open_group("half-matrix-cell", " data-i=\"" + std::to_string(c.wire_i) +
                                               "\" data-j=\"" + std::to_string(c.wire_j) + "\"");
        svg.rect(x, y, cell, cell, "#ffffff", "", " stroke=\"#999999\"");
        const double bh = cell - 8;
        auto bar = [&](int slot, double v, const char *color, const char *cls) {
            const double len = std::min(1.0, std::abs(v));
            svg.rect(x + 4 + 8 * slot, y + 4 + bh * (1 - len), 6, bh * len, color, cls);
        };
        bar(0, c.pair_linear_entropy, kGrey, "pair-linear-entropy");
        bar(1, c.pair_von_neumann_entropy / 2.0, kGrey, "pair-vn-entropy");
        bar(2, c.correlation, c.correlation >= 0 ? kBlue : kRed, "pair-correlation");
        bar(3, c.concurrence, kBlue, "pair-concurrence");
        svg.close_group();
    }
    svg.close_group();
}

} // namespace

std::string render_svg(const Circuit &source, const ReportOptions &options) {
    require_valid(source);
    if (source.num_wires > kMaxRenderQubits) {
        throw ValidationError("rendering is limited to " + std::to_string(kMaxRenderQubits) +
                              " qubits; this circuit has " + std::to_string(source.num_wires));
    }
    const Circuit circuit = options.expand ? expand_circuit(source, *options.expand) : source;
    const int n = circuit.num_wires;
    const GridLayout layout =
        options.layout_k ? make_layout(n, *options.layout_k) : default_layout(n);
    const auto states = simulate(circuit);

    Geometry g{n, layout, 0, kMargin, 0, 0, 0};
    g.grid_w = kCell * static_cast<double>(layout.cols());
    g.grid_h = kCell * static_cast<double>(layout.rows());
    g.column_width = std::max(g.grid_w + 40.0, 12.0 * n + 40.0);
    g.states_top = g.circuit_top + kWireGap * n + 20;

    const double width_states = kMargin * 2 + g.column_width * static_cast<double>(states.size());
    const double hm_x = width_states;
    const double width = hm_x + (n >= 2 ? 40.0 * (n - 1) + kMargin : 0.0);
    const double height = std::max(g.states_top + g.grid_h + 50, kMargin * 2 + 40.0 * n);

    Svg svg;
    draw_circuit(svg, circuit, g, states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        const double origin = g.column_x(k) - g.column_width / 2 + 10;
        svg.open_group("layer", " data-index=\"" + std::to_string(k) + "\"");
        if (k < circuit.layers.size()) {
            draw_highlight(svg, annotate_layer(circuit, k, layout), g, origin);
        }
        draw_state(svg, states[k], g, origin, options);
        draw_qubit_stats(svg, states[k], g, origin);
        svg.close_group();
    }
    if (n >= 2) {
        draw_half_matrix(svg, half_matrix(states.back()), hm_x, g.circuit_top);
    }

    std::string doc = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    doc += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    doc += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" "
           "markerWidth=\"5\" markerHeight=\"5\" orient=\"auto-start-reverse\">"
           "<path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n";
    doc += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    doc += svg.str();
    doc += "</svg>\n";
    return doc;
}

} // namespace qdiff
