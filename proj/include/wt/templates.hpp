/* Copyright 2026 The Width Templater Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "wt/architecture.hpp"

namespace wt {

/// The five width-distribution shapes.
///   kA  linear ramp from w_min up to n
///   kB  constant n
///   kC  linear ramp from n down to w_min
///   kD  peak of n in the centre, w_min at both ends
///   kE  valley of w_min in the centre, n at both ends
enum class TemplateId { kA, kB, kC, kD, kE };

inline constexpr std::array<TemplateId, 5> kAllTemplates = {
    TemplateId::kA, TemplateId::kB, TemplateId::kC, TemplateId::kD, TemplateId::kE};

char to_char(TemplateId id);
std::string_view to_string(TemplateId id);
std::optional<TemplateId> parse_template(std::string_view text);

/// Template b has no pinned minimum; every other template is anchored at w_min.
constexpr bool pins_minimum(TemplateId id) { return id != TemplateId::kB; }

/// Width of layer l (0-based) of D under a template, rounded half-up from
/// w_min + (n - w_min) * shape(t) with t = l / (D - 1):
///   a: t   c: 1 - t   d: 1 - |2t - 1|   e: |2t - 1|
/// For even D the d/e fold is rescaled so the middle pair reaches n (d) or
/// w_min (e). At D = 2 d is all w_min and e all n. Evaluated in exact
/// integer arithmetic, so halves always round up.
int64_t template_width(TemplateId id, int64_t w_min, int64_t n, int64_t layer, int64_t depth);

/// Throws std::invalid_argument when D < 2 (a, c, d, e), D < 1 (b),
/// n < w_min (a, c, d, e), n < 1, or w_min < 1.
WidthVector template_widths(TemplateId id, int64_t w_min, int64_t n, int64_t depth);

}  // namespace wt
