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
#include "qdiff/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>

#include <json.hpp>

namespace qdiff {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    int params;
    bool core;
};

constexpr std::array<KindInfo, 24> kKinds{{
    {GateKind::H, "H", 0, true},
    {GateKind::X, "X", 0, true},
    {GateKind::Y, "Y", 0, true},
    {GateKind::Z, "Z", 0, true},
    {GateKind::S, "S", 0, true},
    {GateKind::Sdg, "Sdg", 0, true},
    {GateKind::T, "T", 0, true},
    {GateKind::Tdg, "Tdg", 0, true},
    {GateKind::ZPow, "Z^", 1, true},
    {GateKind::Phase, "P", 1, true},
    {GateKind::GlobalPhase, "GP", 1, true},
    {GateKind::Swap, "SWAP", 0, true},
    {GateKind::ZG, "ZG", 2, true},
    {GateKind::YG, "YG", 2, true},
    {GateKind::HG, "HG", 2, true},
    {GateKind::XPow, "X^", 1, false},
    {GateKind::YPow, "Y^", 1, false},
    {GateKind::SqrtX, "SX", 0, false},
    {GateKind::SqrtXdg, "SXdg", 0, false},
    {GateKind::SqrtY, "SY", 0, false},
    {GateKind::SqrtYdg, "SYdg", 0, false},
    {GateKind::RX, "RX", 1, false},
    {GateKind::RY, "RY", 1, false},
    {GateKind::RZ, "RZ", 1, false},
}};

const KindInfo &info(GateKind kind) {
    return kKinds[static_cast<std::size_t>(kind)];
}

bool is_exponent(GateKind kind) {
    return kind == GateKind::ZPow || kind == GateKind::XPow || kind == GateKind::YPow;
}

const cplx I{0.0, 1.0};

Mat2 pauli_x() { return (Mat2() << 0, 1, 1, 0).finished(); }
Mat2 pauli_y() { return (Mat2() << 0, -I, I, 0).finished(); }
Mat2 diag(cplx a, cplx b) { return (Mat2() << a, 0, 0, b).finished(); }

// Principal-branch power of an involution P with eigenvalues +1, -1.
Mat2 involution_power(const Mat2 &p, double k) {
    const Mat2 id = Mat2::Identity();
    return 0.5 * (id + p) + std::polar(1.0, kPi * k) * 0.5 * (id - p);
}

Mat2 rotation(const Mat2 &pauli, double theta) {
    return std::cos(theta / 2) * Mat2::Identity() - I * std::sin(theta / 2) * pauli;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_param(std::string_view text, bool allow_degrees, std::string_view token) {
    text = trim(text);
    bool degrees = false;
    if (allow_degrees && text.size() > 3 && text.substr(text.size() - 3) == "deg") {
        degrees = true;
        text = trim(text.substr(0, text.size() - 3));
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto *first = text.data();
    const auto *last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw Error("malformed parameter '" + std::string(text) + "' in token '" +
                    std::string(token) + "'");
    }
    return degrees ? value * (kPi / 180.0) : value;
}

} // namespace

bool is_core(GateKind kind) { return info(kind).core; }
int param_count(GateKind kind) { return info(kind).params; }
std::string_view gate_name(GateKind kind) { return info(kind).name; }

Mat2 gate_matrix(const Gate &gate) {
    const double a = gate.params[0];
    const double b = gate.params[1];
    const double r = 1.0 / std::sqrt(2.0);
    switch (gate.kind) {
    case GateKind::H:
        return (Mat2() << r, r, r, -r).finished();
    case GateKind::X:
        return pauli_x();
    case GateKind::Y:
        return pauli_y();
    case GateKind::Z:
        return diag(1, -1);
    case GateKind::S:
        return diag(1, I);
    case GateKind::Sdg:
        return diag(1, -I);
    case GateKind::T:
        return diag(1, std::polar(1.0, kPi / 4));
    case GateKind::Tdg:
        return diag(1, std::polar(1.0, -kPi / 4));
    case GateKind::ZPow:
        return diag(1, std::polar(1.0, kPi * a));
    case GateKind::Phase:
        return diag(1, std::polar(1.0, a));
    case GateKind::GlobalPhase:
        return std::polar(1.0, a) * Mat2::Identity();
    case GateKind::Swap:
        throw ValidationError("SWAP has no single-qubit matrix");
    case GateKind::ZG:
        return diag(std::polar(1.0, a), std::polar(1.0, b));
    case GateKind::YG:
        return (Mat2() << 0, std::polar(1.0, b), std::polar(1.0, a), 0).finished();
    case GateKind::HG: {
        const cplx ea = r * std::polar(1.0, a);
        const cplx eb = r * std::polar(1.0, b);
        return (Mat2() << ea, eb, ea, -eb).finished();
    }
    case GateKind::XPow:
        return involution_power(pauli_x(), a);
    case GateKind::YPow:
        return involution_power(pauli_y(), a);
    case GateKind::SqrtX:
        return involution_power(pauli_x(), 0.5);
    case GateKind::SqrtXdg:
        return involution_power(pauli_x(), -0.5);
    case GateKind::SqrtY:
        return involution_power(pauli_y(), 0.5);
    case GateKind::SqrtYdg:
        return involution_power(pauli_y(), -0.5);
    case GateKind::RX:
        return rotation(pauli_x(), a);
    case GateKind::RY:
        return rotation(pauli_y(), a);
    case GateKind::RZ:
        return diag(std::polar(1.0, -a / 2), std::polar(1.0, a / 2));
    }
    throw ValidationError("unknown gate kind");
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), res.ptr};
}

std::string gate_token(const Gate &gate) {
    const auto &k = info(gate.kind);
    std::string out(k.name);
    if (k.params == 0) {
        return out;
    }
    out += '(';
    out += format_real(gate.params[0]);
    if (k.params == 2) {
        out += ',';
        out += format_real(gate.params[1]);
    }
    out += ')';
    return out;
}

Gate parse_gate_token(std::string_view token) {
    const auto open = token.find('(');
    if (open == std::string_view::npos) {
        for (const auto &k : kKinds) {
            if (k.params == 0 && k.name == token) {
                return Gate::of(k.kind);
            }
        }
        throw Error("unknown token '" + std::string(token) + "'");
    }
    if (token.back() != ')') {
        throw Error("unterminated parameter list in '" + std::string(token) + "'");
    }
    const auto stem = token.substr(0, open);
    const auto body = token.substr(open + 1, token.size() - open - 2);
    for (const auto &k : kKinds) {
        if (k.params == 0 || k.name != stem) {
            continue;
        }
        const bool degrees_ok = !is_exponent(k.kind);
        Gate g = Gate::of(k.kind);
        const auto comma = body.find(',');
        if (k.params == 1) {
            if (comma != std::string_view::npos) {
                throw Error("'" + std::string(stem) + "' takes one parameter");
            }
            g.params[0] = parse_param(body, degrees_ok, token);
        } else {
            if (comma == std::string_view::npos ||
                body.find(',', comma + 1) != std::string_view::npos) {
                throw Error("'" + std::string(stem) + "' takes two parameters");
            }
            g.params[0] = parse_param(body.substr(0, comma), degrees_ok, token);
            g.params[1] = parse_param(body.substr(comma + 1), degrees_ok, token);
        }
        return g;
    }
    throw Error("unknown token '" + std::string(token) + "'");
}

Circuit parse_circuit(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("syntax error: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!doc.is_object() || !doc.contains("wires") || !doc.contains("cols")) {
        throw ParseError("expected an object with \"wires\" and \"cols\"", 0);
    }
    const auto &wires = doc["wires"];
    if (!wires.is_number_integer() || wires.get<long long>() < 1 ||
        wires.get<long long>() > 1024) {
        throw ParseError("\"wires\" must be a positive integer", 0);
    }
    const auto &cols = doc["cols"];
    if (!cols.is_array()) {
        throw ParseError("\"cols\" must be an array", 0);
    }

    Circuit c;
    c.num_wires = wires.get<int>();

    // Positions are located by scanning forward through the raw text in
    // token order, so error offsets point at the offending string.
    std::size_t cursor = text.find("\"cols\"");
    auto locate = [&](const std::string &tok) {
        const auto at = text.find('"' + tok + '"', cursor);
        if (at != std::string_view::npos) {
            cursor = at + tok.size() + 2;
            return at;
        }
        return cursor;
    };

    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        const auto &col = cols[ci];
        if (!col.is_array()) {
            throw ParseError("column " + std::to_string(ci) + " is not an array", cursor);
        }
        if (col.size() > static_cast<std::size_t>(c.num_wires)) {
            throw ParseError("column " + std::to_string(ci) + " has more tokens than wires",
                             cursor);
        }
        Layer layer;
        ControlSpec controls;
        std::vector<int> swap_wires;
        for (std::size_t w = 0; w < col.size(); ++w) {
            if (!col[w].is_string()) {
                throw ParseError("column " + std::to_string(ci) + " wire " +
                                     std::to_string(w) + ": token must be a string",
                                 cursor);
            }
            const auto tok = col[w].get<std::string>();
            const auto pos = locate(tok);
            const int wire = static_cast<int>(w);
            if (tok == "-") {
                continue;
            }
            if (tok == "C" || tok == "A") {
                controls.push_back({wire, tok == "C" ? Polarity::Control : Polarity::Anticontrol});
                continue;
            }
            Gate g;
            try {
                g = parse_gate_token(tok);
            } catch (const Error &e) {
                throw ParseError("column " + std::to_string(ci) + " wire " +
                                     std::to_string(w) + ": " + e.what(),
                                 pos);
            }
            if (g.kind == GateKind::Swap) {
                swap_wires.push_back(wire);
                continue;
            }
            layer.gates.push_back({g, {wire}, {}});
        }
        if (!swap_wires.empty()) {
            if (swap_wires.size() != 2) {
                throw ParseError("column " + std::to_string(ci) +
                                     " must contain exactly two SWAP tokens",
                                 cursor);
            }
            layer.gates.push_back({Gate::of(GateKind::Swap), swap_wires, {}});
            std::sort(layer.gates.begin(), layer.gates.end(),
                      [](const auto &a, const auto &b) { return a.targets[0] < b.targets[0]; });
        }
        if (!controls.empty() && layer.gates.empty()) {
            throw ParseError("column " + std::to_string(ci) + " has controls but no gate",
                             cursor);
        }
        for (auto &p : layer.gates) {
            p.controls = controls;
        }
        c.layers.push_back(std::move(layer));
    }
    return c;
}

std::string percent_encode(std::string_view text) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char ch : text) {
        if (std::isalnum(ch) || ch == '-' || ch == '_' || ch == '.' || ch == '~') {
            out += static_cast<char>(ch);
        } else {
            out += '%';
            out += hex[ch >> 4];
            out += hex[ch & 15];
        }
    }
    return out;
}

std::string percent_decode(std::string_view text) {
    auto nibble = [](char h) -> int {
        if (h >= '0' && h <= '9') return h - '0';
        if (h >= 'a' && h <= 'f') return h - 'a' + 10;
        if (h >= 'A' && h <= 'F') return h - 'A' + 10;
        return -1;
    };
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '+') {
            out += ' ';
        } else if (text[i] == '%') {
            if (i + 2 >= text.size()) {
                throw ParseError("truncated percent escape", i);
            }
            const int hi = nibble(text[i + 1]);
            const int lo = nibble(text[i + 2]);
            if (hi < 0 || lo < 0) {
                throw ParseError("invalid percent escape", i);
            }
            out += static_cast<char>(hi * 16 + lo);
            i += 2;
        } else {
            out += text[i];
        }
    }
    return out;
}

Circuit parse_circuit_source(std::string_view text) {
    text = trim(text);
    const auto q = text.find('?');
    if (q != std::string_view::npos && text.find("circuit=", q) != std::string_view::npos) {
        text = text.substr(q + 1);
    }
    std::string_view key = "circuit=";
    std::size_t at = std::string_view::npos;
    if (text.substr(0, key.size()) == key) {
        at = 0;
    } else if (!text.empty() && text.front() != '{') {
        const auto amp = text.find("&circuit=");
        if (amp != std::string_view::npos) {
            at = amp + 1;
        }
    }
    if (at == std::string_view::npos) {
        return parse_circuit(text);
    }
    auto value = text.substr(at + key.size());
    value = value.substr(0, value.find('&'));
    return parse_circuit(percent_decode(value));
}

std::string serialize_circuit(const Circuit &circuit) {
    std::string out = "{\"wires\":" + std::to_string(circuit.num_wires) + ",\"cols\":[";
    for (std::size_t li = 0; li < circuit.layers.size(); ++li) {
        const auto &layer = circuit.layers[li];
        std::vector<std::string> tokens(static_cast<std::size_t>(circuit.num_wires), "-");
        auto put = [&](int wire, std::string tok) {
            if (wire < 0 || wire >= circuit.num_wires ||
                tokens[static_cast<std::size_t>(wire)] != "-") {
                throw ValidationError("layer " + std::to_string(li) +
                                      " cannot be written as a column");
            }
            tokens[static_cast<std::size_t>(wire)] = std::move(tok);
        };
        for (const auto &p : layer.gates) {
            if (p.controls != layer.gates.front().controls) {
                throw ValidationError("layer " + std::to_string(li) +
                                      " mixes different control sets");
            }
            for (int t : p.targets) {
                put(t, gate_token(p.gate));
            }
        }
        if (!layer.gates.empty()) {
            for (const auto &c : layer.gates.front().controls) {
                put(c.wire, c.polarity == Polarity::Control ? "C" : "A");
            }
        }
        out += li ? ",[" : "[";
        for (std::size_t w = 0; w < tokens.size(); ++w) {
            out += w ? ",\"" : "\"";
            out += tokens[w];
            out += '"';
        }
        out += ']';
    }
    out += "]}";
    return out;
}

std::string to_query_string(const Circuit &circuit) {
    return "circuit=" + percent_encode(serialize_circuit(circuit));
}

std::vector<Violation> validate(const Circuit &circuit) {
    std::vector<Violation> out;
    const int n = circuit.num_wires;
    if (n < 1 || n > kMaxQubits) {
        out.push_back({-1, {}, "circuit width " + std::to_string(n) +
                                   " outside supported range [1, " +
                                   std::to_string(kMaxQubits) + "]"});
    }
    for (std::size_t li = 0; li < circuit.layers.size(); ++li) {
        const int L = static_cast<int>(li);
        const auto &layer = circuit.layers[li];
        std::set<int> used;
        for (const auto &p : layer.gates) {
            const bool swap = p.gate.kind == GateKind::Swap;
            const std::size_t want = swap ? 2 : 1;
            if (p.targets.size() != want) {
                out.push_back({L, p.targets,
                               std::string(gate_name(p.gate.kind)) + " needs " +
                                   std::to_string(want) + " target wire(s)"});
            }
            for (int i = 0; i < param_count(p.gate.kind); ++i) {
                if (!std::isfinite(p.gate.params[static_cast<std::size_t>(i)])) {
                    out.push_back({L, p.targets, "non-finite gate parameter"});
                }
            }
            std::vector<int> wires = p.targets;
            for (const auto &c : p.controls) {
                wires.push_back(c.wire);
            }
            std::set<int> own;
            for (int w : wires) {
                if (w < 0 || w >= n) {
                    out.push_back({L, {w}, "wire " + std::to_string(w) + " out of range"});
                }
                if (!own.insert(w).second) {
                    out.push_back({L, {w}, "wire " + std::to_string(w) +
                                               " used twice by one gate"});
                }
            }
            // Controls may be shared between gates of a column, targets may not.
            for (int t : p.targets) {
                if (!used.insert(t).second) {
                    out.push_back({L, {t}, "wire " + std::to_string(t) +
                                               " targeted twice in one layer"});
                }
            }
            if (p.controls != layer.gates.front().controls) {
                out.push_back({L, p.targets, "gates in one layer must share their controls"});
            }
        }
    }
    return out;
}

} // namespace qdiff
