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

#include "wt/architecture.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace wt {

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string out = "invalid architecture spec";
  for (const auto& issue : issues) {
    out += "\n  ";
    out += issue.to_string();
  }
  return out;
}

}  // namespace

std::string ValidationIssue::to_string() const {
  if (unit_index) return fmt::format("unit {}: {}", *unit_index, message);
  return message;
}

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

bool is_width_bearing(const Unit& unit) {
  return std::holds_alternative<ConvUnit>(unit) ||
         std::holds_alternative<BottleneckUnit>(unit);
}

int64_t depth(const ArchitectureSpec& spec) {
  int64_t d = 0;
  for (const auto& unit : spec.units) d += is_width_bearing(unit) ? 1 : 0;
  return d;
}

bool needs_projection(int64_t in_channels, const BottleneckUnit& block) {
  return block.stride != 1 || in_channels != block.out_channels();
}

std::vector<ValidationIssue> check(const ArchitectureSpec& spec) {
  std::vector<ValidationIssue> issues;
  auto global = [&](std::string msg) { issues.push_back({std::nullopt, std::move(msg)}); };

  if (spec.input.height < 1 || spec.input.width < 1)
    global("input height and width must be >= 1");
  if (spec.input.channels < 1) global("input channels must be >= 1");
  if (spec.num_classes < 2) global("num_classes must be >= 2");
  if (spec.units.empty()) {
    global("units must not be empty");
    return issues;
  }
  if (depth(spec) == 0) global("at least one conv or bottleneck unit is required");

  // Shape propagation stops reporting collapse once the tensor is already gone.
  int64_t h = spec.input.height;
  int64_t w = spec.input.width;
  int64_t c = spec.input.channels;
  bool collapsed = h < 1 || w < 1;

  for (std::size_t i = 0; i < spec.units.size(); ++i) {
    auto at = [&](std::string msg) { issues.push_back({i, std::move(msg)}); };
    const Unit& unit = spec.units[i];

    if (const auto* conv = std::get_if<ConvUnit>(&unit)) {
      if (conv->width < 1) at("width must be >= 1");
      if (conv->kernel < 1 || conv->kernel % 2 == 0) at("kernel must be odd and >= 1");
      if (conv->stride < 1) {
        at("stride must be >= 1");
      } else {
        h = (h + conv->stride - 1) / conv->stride;
        w = (w + conv->stride - 1) / conv->stride;
      }
      c = conv->width;
    } else if (const auto* pool = std::get_if<PoolUnit>(&unit)) {
      if (pool->factor < 1) {
        at("pool factor must be >= 1");
      } else {
        h /= pool->factor;
        w /= pool->factor;
      }
    } else if (const auto* block = std::get_if<BottleneckUnit>(&unit)) {
      const bool ok = block->base_width >= 1 && block->stride >= 1;
      if (block->base_width < 1) at("base_width must be >= 1");
      if (block->expansion != BottleneckUnit::kExpansion)
        at(fmt::format("expansion must be {}", BottleneckUnit::kExpansion));
      if (block->stride < 1) at("stride must be >= 1");
      if (ok && block->has_projection != needs_projection(c, *block)) {
        at(block->has_projection
               ? "has_projection is set but the identity shortcut fits"
               : "has_projection is required: channel or stride mismatch");
      }
      if (ok) {
        h = (h + block->stride - 1) / block->stride;
        w = (w + block->stride - 1) / block->stride;
      }
      c = block->out_channels();
    } else {
      h = std::min<int64_t>(h, 1);
      w = std::min<int64_t>(w, 1);
    }

    if (!collapsed && (h < 1 || w < 1)) {
      at(fmt::format("spatial size collapses below 1x1 ({}x{})", h, w));
      collapsed = true;
    }
  }
  return issues;
}

const ArchitectureSpec& validate(const ArchitectureSpec& spec) {
  auto issues = check(spec);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return spec;
}

WidthVector extract_widths(const ArchitectureSpec& spec) {
  WidthVector widths;
  for (const auto& unit : spec.units) {
    if (const auto* conv = std::get_if<ConvUnit>(&unit)) {
      widths.push_back(conv->width);
    } else if (const auto* block = std::get_if<BottleneckUnit>(&unit)) {
      widths.push_back(block->base_width);
    }
  }
  return widths;
}

}  // namespace wt
