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
 * The simulation report: a versioned JSON document holding every layer's
 * state vector, its difference highlighting, per-qubit statistics and the
 * final half-matrix. Keys are emitted in a fixed order and doubles as
 * shortest round-trip decimals, so identical input gives identical bytes.
 */
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qdiff/analytics.hpp"
#include "qdiff/annotation.hpp"
#include "qdiff/circuit.hpp"
#include "qdiff/expansion.hpp"

namespace qdiff {

inline constexpr const char *kSchemaVersion = "1.0";

using Json = nlohmann::ordered_json;

struct ReportOptions {
    std::optional<int> layout_k; // default_layout() when empty
    BarMode bars = BarMode::Probability;
    int decades = 6;
    std::optional<ExpansionMode> expand; // expand before simulating
};

[[nodiscard]] Json annotation_to_json(const LayerAnnotation &a);
[[nodiscard]] Json qubit_stats_to_json(int wire, const QubitStats &s);
[[nodiscard]] Json half_matrix_to_json(const HalfMatrix &h);

/// Validates, optionally expands, simulates and annotates `circuit`.
/// Throws ValidationError for invalid circuits and NormDriftError when the
/// simulation loses unitarity.
[[nodiscard]] Json build_report(const Circuit &circuit, const ReportOptions &options);

/// Compact form, newline terminated.
[[nodiscard]] std::string dump_report(const Json &report, bool pretty = false);

/// Throws ValidationError listing every violation, if any.
void require_valid(const Circuit &circuit);

} // namespace qdiff
