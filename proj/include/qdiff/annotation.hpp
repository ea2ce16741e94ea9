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
 * Difference highlighting: a replayable description of how one layer's
 * gate changes the state vector.
 *
 * For a gate on wire j the affected amplitudes (those satisfying every
 * control) split into an even subset (bit j = 0) and an odd subset
 * (bit j = 1). Every core gate is one of
 *
 *  - Rotation:      one subset multiplied by e^{i angle}
 *  - DualRotation:  even by e^{i a}, odd by e^{i b}, then optionally the
 *                   subsets exchange places
 *  - Butterfly:     even' = (e^{ia} even + e^{ib} odd) / sqrt(2),
 *                   odd'  = (e^{ia} even - e^{ib} odd) / sqrt(2)
 *  - SwapPairs:     explicit amplitude pairs exchanged
 *
 * Colors are labels only; renderers own the palette.
 */
#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdiff/circuit.hpp"
#include "qdiff/state_vector.hpp"

namespace qdiff {

/// A state vector of 2^n amplitudes wrapped as 2^(n-K) rows x 2^K columns.
struct GridLayout {
    int n = 1;
    int k = 0;

    [[nodiscard]] Index rows() const { return Index{1} << (n - k); }
    [[nodiscard]] Index cols() const { return Index{1} << k; }
};

[[nodiscard]] GridLayout make_layout(int n, int k);
/// K = max(0, n - 4).
[[nodiscard]] GridLayout default_layout(int n);

struct GridPosition {
    Index row = 0;
    Index col = 0;

    friend bool operator==(const GridPosition &, const GridPosition &) = default;
};

/// Low K bits select the column, the remaining bits the row.
[[nodiscard]] GridPosition layout_position(Index index, const GridLayout &layout);

enum class Color { Green, Purple };
enum class LayoutClass { SameColumn, SameRow, Diagonal };

[[nodiscard]] std::string_view to_string(Color c);
[[nodiscard]] std::string_view to_string(LayoutClass c);

/// Where swapped pairs land in the wrapped grid; depends on (i, j, K) only.
[[nodiscard]] LayoutClass swap_layout_class(int i, int j, const GridLayout &layout);

struct AmplitudePartition {
    std::vector<Index> even;
    std::vector<Index> odd;

    friend bool operator==(const AmplitudePartition &, const AmplitudePartition &) = default;
};

/// Indices whose control bits match; sorted ascending.
[[nodiscard]] std::vector<Index> affected_set(int n, const ControlSpec &controls);
[[nodiscard]] AmplitudePartition even_odd_partition(int n, int target,
                                                    const ControlSpec &controls);

struct Rotation {
    std::vector<Index> subset;
    double angle = 0.0; // normalized to (-pi, pi]
    double raw_angle = 0.0;
    Color color = Color::Green;
};

struct DualRotation {
    AmplitudePartition partition;
    double angle_even = 0.0;
    double angle_odd = 0.0;
    double raw_angle_even = 0.0;
    double raw_angle_odd = 0.0;
    bool exchange = false;
};

struct Butterfly {
    AmplitudePartition partition;
    double angle_even = 0.0;
    double angle_odd = 0.0;
    double raw_angle_even = 0.0;
    double raw_angle_odd = 0.0;
};

struct SwapPairs {
    std::vector<std::pair<Index, Index>> pairs;
    LayoutClass layout_class = LayoutClass::SameColumn;
    int wire_i = 0;
    int wire_j = 1;
};

struct Unsupported {
    std::string reason;
};

using LayerAnnotation = std::variant<Rotation, DualRotation, Butterfly, SwapPairs, Unsupported>;

[[nodiscard]] inline bool is_supported(const LayerAnnotation &a) {
    return !std::holds_alternative<Unsupported>(a);
}

/// Angle mapped into (-pi, pi].
[[nodiscard]] double normalize_angle(double radians);

[[nodiscard]] LayerAnnotation annotate_placement(int n, const GatePlacement &p,
                                                 const GridLayout &layout);
[[nodiscard]] LayerAnnotation annotate_layer(const Circuit &circuit, std::size_t layer_index,
                                             const GridLayout &layout);
[[nodiscard]] LayerAnnotation annotate_layer(const Circuit &circuit, std::size_t layer_index);

/// Executes an annotation literally. Throws for Unsupported.
[[nodiscard]] StateVector apply_annotation(const StateVector &state, const LayerAnnotation &a);

} // namespace qdiff
