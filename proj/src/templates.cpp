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

#include "wt/templates.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace wt {

namespace {

// shape(t) as the fraction num / den with t = layer / (depth - 1).
struct Fraction {
  int64_t num;
  int64_t den;
};

int64_t abs64(int64_t x) { return x < 0 ? -x : x; }

Fraction shape_at(TemplateId id, int64_t layer, int64_t depth) {
  const int64_t last = depth - 1;
  // Distance from the centre on the doubled grid, |2 * layer - last|. For even
  // depth the two middle units sit at 1, not 0, so the fold is rescaled to
  // [near, last] and the centre pair still reaches w_min (e) or n (d).
  const int64_t fold = abs64(2 * layer - last);
  const int64_t near = last % 2;
  const int64_t span = last - near;
  switch (id) {
    case TemplateId::kA: return {layer, last};
    case TemplateId::kB: return {1, 1};
    case TemplateId::kC: return {last - layer, last};
    case TemplateId::kD: return span == 0 ? Fraction{0, 1} : Fraction{last - fold, span};
    case TemplateId::kE: return span == 0 ? Fraction{1, 1} : Fraction{fold - near, span};
  }
  return {0, 1};
}

}  // namespace

char to_char(TemplateId id) { return static_cast<char>('a' + static_cast<int>(id)); }

std::string_view to_string(TemplateId id) {
  static constexpr std::array<std::string_view, 5> kNames = {"a", "b", "c", "d", "e"};
  return kNames[static_cast<std::size_t>(id)];
}

std::optional<TemplateId> parse_template(std::string_view text) {
  if (text.size() != 1 || text[0] < 'a' || text[0] > 'e') return std::nullopt;
  return static_cast<TemplateId>(text[0] - 'a');
}

int64_t template_width(TemplateId id, int64_t w_min, int64_t n, int64_t layer, int64_t depth) {
  if (id == TemplateId::kB) return std::max<int64_t>(n, 1);
  const auto [num, den] = shape_at(id, layer, depth);
  // round-half-up of w_min + span * num / den, with span >= 0
  const int64_t span = n - w_min;
  const int64_t offset = (2 * span * num + den) / (2 * den);
  return std::max<int64_t>(w_min + offset, 1);
}

WidthVector template_widths(TemplateId id, int64_t w_min, int64_t n, int64_t depth) {
  if (n < 1) throw std::invalid_argument(fmt::format("template {}: n must be >= 1", to_string(id)));
  if (pins_minimum(id)) {
    if (depth < 2)
      throw std::invalid_argument(
          fmt::format("template {} needs at least 2 width-bearing units, got {}", to_string(id), depth));
    if (w_min < 1)
      throw std::invalid_argument(fmt::format("template {}: w_min must be >= 1", to_string(id)));
    if (n < w_min)
      throw std::invalid_argument(
          fmt::format("template {}: n ({}) must be >= w_min ({})", to_string(id), n, w_min));
  } else if (depth < 1) {
    throw std::invalid_argument("template b needs at least 1 width-bearing unit");
  }

  WidthVector widths(static_cast<std::size_t>(depth));
  for (int64_t l = 0; l < depth; ++l)
    widths[static_cast<std::size_t>(l)] = template_width(id, w_min, n, l, depth);
  return widths;
}

}  // namespace wt
