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
#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qdiff/expansion.hpp"
#include "qdiff/render.hpp"
#include "qdiff/report.hpp"

namespace qdiff::cli {

namespace {

constexpr double kVerifyTolerance = 1e-10;

std::string read_source(const std::string &source, std::istream &in) {
    if (source == "-") {
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    if (source.rfind("circuit=", 0) == 0 || source.rfind('{', 0) == 0) {
        return source;
    }
    std::ifstream file(source, std::ios::binary);
    if (!file) {
        throw Error("cannot open '" + source + "'");
    }
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

struct CommonOptions {
    std::string source;
    std::optional<int> layout;
    std::string bars = "probability";
    int decades = 6;
    std::string expand;
    bool keep_global_phase = true;
    bool pretty = false;
    std::string output;
};

void add_display_options(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("circuit", o.source,
                    "circuit file, '-' for stdin, or an inline circuit=... / JSON string")
        ->required();
    cmd->add_option("--layout", o.layout, "column bits K of the wrapped grid (default max(0, n-4))");
    cmd->add_option("--bars", o.bars, "bar length mode")
        ->check(CLI::IsMember({"probability", "magnitude", "log"}));
    cmd->add_option("--decades", o.decades, "decades spanned by log bars")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--expand", o.expand, "expand non-core gates before simulating")
        ->check(CLI::IsMember({"basic", "generalized"}));
    cmd->add_option("--keep-global-phase", o.keep_global_phase,
                    "keep GlobalPhase gates produced by expansion (true|false)");
}

ReportOptions to_report_options(const CommonOptions &o) {
    ReportOptions r;
    r.layout_k = o.layout;
    r.bars = parse_bar_mode(o.bars);
    r.decades = o.decades;
    if (!o.expand.empty()) {
        r.expand = ExpansionMode{o.expand == "generalized", o.keep_global_phase};
    }
    return r;
}

int cmd_simulate(const CommonOptions &o, std::istream &in, std::ostream &out) {
    const Circuit c = parse_circuit_source(read_source(o.source, in));
    out << dump_report(build_report(c, to_report_options(o)), o.pretty);
    return kOk;
}

int cmd_render(const CommonOptions &o, std::istream &in, std::ostream &out) {
    const Circuit c = parse_circuit_source(read_source(o.source, in));
    const std::string svg = render_svg(c, to_report_options(o));
    if (o.output.empty() || o.output == "-") {
        out << svg;
    } else {
        std::ofstream file(o.output, std::ios::binary);
        if (!file) {
            throw Error("cannot write '" + o.output + "'");
        }
        file << svg;
    }
    return kOk;
}

int cmd_validate(const CommonOptions &o, std::istream &in, std::ostream &out,
                 std::ostream &err) {
    const Circuit c = parse_circuit_source(read_source(o.source, in));
    const auto violations = validate(c);
    for (const auto &v : violations) {
        err << (v.layer >= 0 ? "layer " + std::to_string(v.layer) + ": " : std::string{})
            << v.reason << '\n';
    }
    if (!violations.empty()) {
        return kInvalidInput;
    }
    out << serialize_circuit(c) << '\n';
    return kOk;
}

struct ExpandOptions {
    std::string source;
    std::string mode = "basic";
    bool generalized = false;
    bool keep_global_phase = true;
    bool verify = false;
    bool query = false;
};

int cmd_expand(const ExpandOptions &o, std::istream &in, std::ostream &out, std::ostream &err) {
    const Circuit c = parse_circuit_source(read_source(o.source, in));
    require_valid(c);
    const ExpansionMode mode{o.generalized || o.mode == "generalized", o.keep_global_phase};
    for (const auto &w : expansion_warnings(c, mode)) {
        err << "warning: " << w << '\n';
    }
    if (o.verify) {
        for (std::size_t li = 0; li < c.layers.size(); ++li) {
            for (const auto &p : c.layers[li].gates) {
                if (is_core(p.gate.kind)) {
                    continue;
                }
                const double dev = verify_expansion(p, expand_gate(p, mode), mode.keep_global_phase);
                if (!(dev <= kVerifyTolerance)) {
                    err << "verification failed at layer " << li << " for "
                        << gate_token(p.gate) << ": deviation " << dev << '\n';
                    return kVerificationFailed;
                }
            }
        }
    }
    const Circuit expanded = expand_circuit(c, mode);
    out << (o.query ? to_query_string(expanded) : serialize_circuit(expanded)) << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
        std::ostream &err) {
    CLI::App app{"qdiff: layer-by-layer state vector simulation with difference highlighting"};
    app.require_subcommand(1);

    CommonOptions sim;
    auto *simulate = app.add_subcommand("simulate", "emit the JSON simulation report");
    add_display_options(simulate, sim);
    simulate->add_flag("--pretty", sim.pretty, "indent the JSON output");

    CommonOptions rend;
    auto *render = app.add_subcommand("render", "emit a static SVG rendering (n <= 8)");
    add_display_options(render, rend);
    render->add_option("-o,--output", rend.output, "output file (default stdout)");

    ExpandOptions exp;
    auto *expand = app.add_subcommand("expand", "rewrite non-core gates into core gates");
    expand->add_option("circuit", exp.source, "circuit file, '-' for stdin, or inline text")
        ->required();
    expand->add_option("--mode", exp.mode, "expansion table")
        ->check(CLI::IsMember({"basic", "generalized"}));
    expand->add_flag("--generalized", exp.generalized, "shorthand for --mode generalized");
    expand->add_option("--keep-global-phase", exp.keep_global_phase,
                       "keep GlobalPhase gates (true|false)");
    expand->add_flag("--verify", exp.verify,
                     "check every rewrite against its matrix (exit 3 above 1e-10)");
    expand->add_flag("--query", exp.query, "print as a percent-encoded circuit= parameter");

    CommonOptions val;
    auto *validate_cmd = app.add_subcommand("validate", "check a circuit and print it canonically");
    validate_cmd->add_option("circuit", val.source, "circuit file, '-' for stdin, or inline text")
        ->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*simulate) {
            return cmd_simulate(sim, in, out);
        }
        if (*render) {
            return cmd_render(rend, in, out);
        }
        if (*expand) {
            return cmd_expand(exp, in, out, err);
        }
        return cmd_validate(val, in, out, err);
    } catch (const NormDriftError &e) {
        err << "error: " << e.what() << '\n';
        return kNormDrift;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}

} // namespace qdiff::cli
