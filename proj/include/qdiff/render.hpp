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

#include <string>

#include "qdiff/report.hpp"

namespace qdiff {

/// Widest circuit the static renderer accepts.
inline constexpr int kMaxRenderQubits = 8;

/// Self-contained SVG: circuit diagram on top, one wrapped state vector
/// group per layer record below it, the final half-matrix on the right.
/// Output bytes depend only on the inputs.
[[nodiscard]] std::string render_svg(const Circuit &circuit, const ReportOptions &options);

} // namespace qdiff
