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
#pragma once

#include <vector>

#include "qdiff/circuit.hpp"
#include "qdiff/state_vector.hpp"

namespace qdiff {

/// Norm drift tolerated before a simulation is declared broken.
inline constexpr double kNormTolerance = 1e-9;

[[nodiscard]] StateVector apply_placement(const StateVector &state, const GatePlacement &p);
[[nodiscard]] StateVector apply_layer(const StateVector &state, const Layer &layer);

/// Throws NormDriftError when |<psi|psi> - 1| exceeds kNormTolerance.
void check_norm(const StateVector &state, std::size_t layer);

/// States before layer 0 and after every layer: depth + 1 entries,
/// starting from |0...0>.
[[nodiscard]] std::vector<StateVector> simulate(const Circuit &circuit);
[[nodiscard]] std::vector<StateVector> simulate(const Circuit &circuit, StateVector initial);

[[nodiscard]] StateVector final_state(const Circuit &circuit);

} // namespace qdiff
