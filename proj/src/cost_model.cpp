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

#include "wt/cost_model.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace wt {

namespace {

int64_t strided(int64_t side, int64_t stride) { return (side + stride - 1) / stride; }

// k x k same-padded conv without bias; BN adds a per-channel scale and shift,
// otherwise the conv carries a bias.
struct ConvCost {
  int64_t flops;
  int64_t params;
};

ConvCost conv_cost(int64_t kernel, int64_t c_in, int64_t c_out, int64_t out_h, int64_t out_w,
                   bool has_bn) {
  const int64_t weights = kernel * kernel * c_in * c_out;
  return {weights * out_h * out_w, weights + (has_bn ? 2 * c_out : c_out)};
}

class CostWalker {
 public:
  explicit CostWalker(const ArchitectureSpec& spec)
      : shape_{spec.input.channels, spec.input.height, spec.input.width} {}

  LayerCost operator()(const ConvUnit& u) {
    TensorShape out{u.width, strided(shape_.height, u.stride), strided(shape_.width, u.stride)};
    auto c = conv_cost(u.kernel, shape_.channels, u.width, out.height, out.width, u.has_bn);
    return advance(fmt::format("conv{}x{}", u.kernel, u.kernel), out, c.flops, c.params, true);
  }

  LayerCost operator()(const PoolUnit& u) {
    TensorShape out{shape_.channels, shape_.height / u.factor, shape_.width / u.factor};
    return advance(fmt::format("pool/{}", u.factor), out, 0, 0, false);
  }

  LayerCost operator()(const BottleneckUnit& u) {
    const int64_t c_in = shape_.channels;
    const int64_t h = shape_.height;
    const int64_t w = shape_.width;
    TensorShape out{u.out_channels(), strided(h, u.stride), strided(w, u.stride)};

    auto reduce = conv_cost(1, c_in, u.base_width, h, w, true);
    auto spatial = conv_cost(3, u.base_width, u.base_width, out.height, out.width, true);
    auto expand = conv_cost(1, u.base_width, out.channels, out.height, out.width, true);
    int64_t flops = reduce.flops + spatial.flops + expand.flops;
    int64_t params = reduce.params + spatial.params + expand.params;
    if (u.has_projection) {
      auto shortcut = conv_cost(1, c_in, out.channels, out.height, out.width, true);
      flops += shortcut.flops;
      params += shortcut.params;
    }
    return advance(fmt::format("bottleneck{}{}", u.base_width, u.has_projection ? "+proj" : ""),
                   out, flops, params, true);
  }

  LayerCost operator()(const GlobalPoolUnit&) {
    return advance("gap", TensorShape{shape_.channels, 1, 1}, 0, 0, false);
  }

  LayerCost classifier(int64_t num_classes) const {
    const int64_t features = shape_.elements();
    return {"fc", TensorShape{num_classes, 1, 1}, features * num_classes,
            features * num_classes + num_classes, num_classes};
  }

  const TensorShape& shape() const { return shape_; }

 private:
  LayerCost advance(std::string label, TensorShape out, int64_t flops, int64_t params,
                    bool holds_activations) {
    shape_ = out;
    return {std::move(label), out, flops, params, holds_activations ? out.elements() : 0};
  }

  TensorShape shape_;
};

}  // namespace

std::vector<LayerCost> layer_costs(const ArchitectureSpec& spec) {
  CostWalker walker(spec);
  std::vector<LayerCost> rows;
  rows.reserve(spec.units.size() + 1);
  for (const auto& unit : spec.units) rows.push_back(std::visit(walker, unit));
  rows.push_back(walker.classifier(spec.num_classes));
  return rows;
}

int64_t classifier_inputs(const ArchitectureSpec& spec) {
  CostWalker walker(spec);
  for (const auto& unit : spec.units) std::visit(walker, unit);
  return walker.shape().elements();
}

CostReport compute_cost(const ArchitectureSpec& spec) {
  CostReport report;
  int64_t activations = 0;
  for (const auto& row : layer_costs(spec)) {
    report.flops += row.flops;
    report.params += row.params;
    activations += row.activations;
  }
  report.weight_bytes = kBytesPerScalar * report.params;
  report.activation_bytes_per_sample = kBytesPerScalar * activations;
  return report;
}

int64_t compute_flops(const ArchitectureSpec& spec) { return compute_cost(spec).flops; }

int64_t compute_params(const ArchitectureSpec& spec) { return compute_cost(spec).params; }

MemoryEstimate compute_memory(const ArchitectureSpec& spec, int64_t batch) {
  if (batch < 1) throw std::invalid_argument("batch must be >= 1");
  const CostReport cost = compute_cost(spec);
  return {cost.weight_bytes, cost.activation_bytes_per_sample, batch,
          cost.weight_bytes + batch * cost.activation_bytes_per_sample};
}

nlohmann::json cost_to_json(const CostReport& cost) {
  return {{"flops", cost.flops},
          {"params", cost.params},
          {"weight_bytes", cost.weight_bytes},
          {"activation_bytes_per_sample", cost.activation_bytes_per_sample}};
}

CostReport cost_from_json(const nlohmann::json& doc) {
  return {doc.at("flops").get<int64_t>(), doc.at("params").get<int64_t>(),
          doc.at("weight_bytes").get<int64_t>(),
          doc.at("activation_bytes_per_sample").get<int64_t>()};
}

}  // namespace wt
