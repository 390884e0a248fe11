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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wt {

struct InputShape {
  int64_t height = 32;
  int64_t width = 32;
  int64_t channels = 3;

  bool operator==(const InputShape&) const = default;
};

// Same-padded convolution: output side is ceil(in / stride).
struct ConvUnit {
  int64_t width = 1;
  int64_t kernel = 3;
  int64_t stride = 1;
  bool has_bn = true;

  bool operator==(const ConvUnit&) const = default;
};

struct PoolUnit {
  int64_t factor = 2;

  bool operator==(const PoolUnit&) const = default;
};

// 1x1 (base) -> 3x3 (base, strided) -> 1x1 (expansion * base), all with BN.
// The shortcut is a strided 1x1 conv + BN when has_projection is set.
struct BottleneckUnit {
  static constexpr int64_t kExpansion = 4;

  int64_t base_width = 1;
  int64_t expansion = kExpansion;
  int64_t stride = 1;
  bool has_projection = false;

  int64_t out_channels() const { return base_width * expansion; }

  bool operator==(const BottleneckUnit&) const = default;
};

struct GlobalPoolUnit {
  bool operator==(const GlobalPoolUnit&) const = default;
};

using Unit = std::variant<ConvUnit, PoolUnit, BottleneckUnit, GlobalPoolUnit>;

/// A feed-forward CNN: units applied in order to the input, followed by a
/// single fully-connected classifier over the flattened final tensor.
struct ArchitectureSpec {
  std::string name;
  InputShape input;
  std::vector<Unit> units;
  int64_t num_classes = 10;

  bool operator==(const ArchitectureSpec&) const = default;
};

/// Ordered channel counts of the width-bearing units (conv width or
/// bottleneck base width). The classifier is never part of it.
using WidthVector = std::vector<int64_t>;

bool is_width_bearing(const Unit& unit);

/// Number of width-bearing units (D).
int64_t depth(const ArchitectureSpec& spec);

struct ValidationIssue {
  std::optional<std::size_t> unit_index;
  std::string message;

  std::string to_string() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);

  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Every violated invariant, in unit order. Empty means the spec is valid.
std::vector<ValidationIssue> check(const ArchitectureSpec& spec);

/// Returns the spec unchanged or throws ValidationError listing all issues.
const ArchitectureSpec& validate(const ArchitectureSpec& spec);

WidthVector extract_widths(const ArchitectureSpec& spec);

/// True when a bottleneck with these settings cannot use an identity shortcut.
bool needs_projection(int64_t in_channels, const BottleneckUnit& block);

}  // namespace wt
