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
#include <string>
#include <vector>

#include "json.hpp"
#include "wt/architecture.hpp"

namespace wt {

inline constexpr int64_t kBytesPerScalar = 4;

/// Analytic cost of one forward pass. flops counts multiply-accumulates,
/// one per multiply; BN, activations and pooling contribute nothing.
struct CostReport {
  int64_t flops = 0;
  int64_t params = 0;
  int64_t weight_bytes = 0;
  int64_t activation_bytes_per_sample = 0;

  bool operator==(const CostReport&) const = default;
};

struct MemoryEstimate {
  int64_t weight_bytes = 0;
  int64_t activation_bytes_per_sample = 0;
  int64_t batch = 1;
  int64_t total_bytes = 0;  // weight_bytes + batch * activation_bytes_per_sample
};

struct TensorShape {
  int64_t channels = 0;
  int64_t height = 0;
  int64_t width = 0;

  int64_t elements() const { return channels * height * width; }
};

/// One row of the per-unit breakdown; the classifier is the last row.
struct LayerCost {
  std::string label;
  TensorShape output;
  int64_t flops = 0;
  int64_t params = 0;
  int64_t activations = 0;  // output elements held per sample
};

/// Per-unit costs in unit order followed by the classifier. Pool and global
/// pool rows report zero activations so that the totals count only the
/// outputs of conv, bottleneck and classifier layers.
std::vector<LayerCost> layer_costs(const ArchitectureSpec& spec);

int64_t compute_flops(const ArchitectureSpec& spec);
int64_t compute_params(const ArchitectureSpec& spec);
MemoryEstimate compute_memory(const ArchitectureSpec& spec, int64_t batch);
CostReport compute_cost(const ArchitectureSpec& spec);

/// Input feature count of the classifier: the flattened final tensor.
int64_t classifier_inputs(const ArchitectureSpec& spec);

nlohmann::json cost_to_json(const CostReport& cost);
CostReport cost_from_json(const nlohmann::json& doc);

}  // namespace wt
