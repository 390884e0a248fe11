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

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "toy_specs.hpp"
#include "wt/cost_model.hpp"
#include "wt/planner.hpp"
#include "wt/presets.hpp"

namespace wt {
namespace {

ArchitectureSpec one_conv(int64_t c_in, int64_t c_out, bool bn) {
  return {.name = "one", .input = {32, 32, c_in},
          .units = {ConvUnit{.width = c_out, .kernel = 3, .stride = 1, .has_bn = bn}, GlobalPoolUnit{}},
          .num_classes = 2};
}

TEST(CostModelTest, SingleConvFlops) {
  const auto rows = layer_costs(one_conv(3, 16, true));
  EXPECT_EQ(rows.front().flops, 9 * 3 * 16 * 1024);
  EXPECT_EQ(rows.front().flops, 442368);
  // plus the 16 -> 2 classifier after global pooling
  EXPECT_EQ(compute_flops(one_conv(3, 16, true)), 442368 + 16 * 2);
}

TEST(CostModelTest, ConvWithoutBnCarriesBias) {
  const auto spec = one_conv(1, 1, false);
  EXPECT_EQ(layer_costs(spec).front().params, 10);
  // classifier 1 -> 2 with bias
  EXPECT_EQ(compute_params(spec), 10 + 2 + 2);
  EXPECT_EQ(layer_costs(one_conv(1, 1, true)).front().params, 11);
}

TEST(CostModelTest, SingleConvActivationBytes) {
  const auto spec = one_conv(3, 16, true);
  EXPECT_EQ(layer_costs(spec).front().activations * kBytesPerScalar, 65536);
  const auto mem = compute_memory(spec, 1);
  EXPECT_EQ(mem.activation_bytes_per_sample, 65536 + 2 * kBytesPerScalar);
  EXPECT_EQ(mem.total_bytes, mem.weight_bytes + mem.activation_bytes_per_sample);
  EXPECT_EQ(compute_memory(spec, 8).total_bytes, mem.weight_bytes + 8 * mem.activation_bytes_per_sample);
  EXPECT_THROW(compute_memory(spec, 0), std::invalid_argument);
}

TEST(CostModelTest, GlobalPoolAndClassifierOnly) {
  ArchitectureSpec spec{.name = "gap", .input = {8, 8, 3}, .units = {GlobalPoolUnit{}},
                        .num_classes = 10};
  const auto cost = compute_cost(spec);
  EXPECT_EQ(cost.params, 3 * 10 + 10);
  EXPECT_EQ(cost.weight_bytes, 4 * cost.params);
  EXPECT_EQ(cost.activation_bytes_per_sample, 10 * 4);
  EXPECT_EQ(cost.flops, 30);
}

TEST(CostModelTest, DoublingWidthsOfPlainStack) {
  auto stack = [](int64_t w) {
    return ArchitectureSpec{.name = "stack", .input = {8, 8, 3},
                            .units = {ConvUnit{.width = w}, ConvUnit{.width = w}, ConvUnit{.width = w}},
                            .num_classes = 2};
  };
  auto conv_flops = [](const ArchitectureSpec& s) {
    const auto rows = layer_costs(s);
    return rows[0].flops + rows[1].flops + rows[2].flops;
  };
  // 9*3*4*64 + 2 * 9*4*4*64, classifier 4*64*2
  EXPECT_EQ(conv_flops(stack(4)), 25344);
  EXPECT_EQ(compute_flops(stack(4)), 25856);
  // first layer x2, interior layers x4, classifier x2
  EXPECT_EQ(conv_flops(stack(8)), 87552);
  EXPECT_EQ(compute_flops(stack(8)), 88576);
  EXPECT_EQ(layer_costs(stack(8))[0].flops, 2 * layer_costs(stack(4))[0].flops);
  EXPECT_EQ(layer_costs(stack(8))[1].flops, 4 * layer_costs(stack(4))[1].flops);
}

TEST(CostModelTest, MatchesNaiveExecutionOnRandomSpecs) {
  std::mt19937 rng(20260);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = testing::random_toy_spec(rng);
    ASSERT_TRUE(check(spec).empty()) << trial;
    testing::NaiveExecutor oracle;
    oracle.run(spec);
    const auto cost = compute_cost(spec);
    ASSERT_EQ(cost.flops, oracle.multiplies) << "trial " << trial;
    ASSERT_EQ(cost.params, oracle.param_count()) << "trial " << trial;
    ASSERT_EQ(cost.activation_bytes_per_sample, 4 * oracle.conv_like_output_elements) << trial;
  }
}

// Shortcut flags stay as they are: only the one width changes.
TEST(CostModelTest, WideningOneUnitNeverDecreasesCost) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = testing::random_toy_spec(rng);
    const auto before = compute_cost(spec);
    auto wider = spec;
    std::vector<int64_t*> widths;
    for (auto& unit : wider.units) {
      if (auto* c = std::get_if<ConvUnit>(&unit)) widths.push_back(&c->width);
      if (auto* b = std::get_if<BottleneckUnit>(&unit)) widths.push_back(&b->base_width);
    }
    std::uniform_int_distribution<std::size_t> pick(0, widths.size() - 1);
    *widths[pick(rng)] += std::uniform_int_distribution<int64_t>(1, 5)(rng);
    const auto after = compute_cost(wider);
    EXPECT_GE(after.flops, before.flops);
    EXPECT_GE(after.params, before.params);
  }
}

TEST(CostModelTest, VggAnchors) {
  const auto cost = compute_cost(preset("vgg19-cifar", 10));
  EXPECT_NEAR(cost.params, 20.03e6, 0.01 * 20.03e6);
  EXPECT_NEAR(cost.flops, 399e6, 0.02 * 399e6);
  EXPECT_EQ(cost.weight_bytes, 4 * cost.params);
  // exact totals of this model, frozen
  EXPECT_EQ(cost.params, 20035018);
  EXPECT_EQ(cost.flops, 398136320);
}

TEST(CostModelTest, ResNetAnchors) {
  const auto cost = compute_cost(preset("resnet50-cifar", 10));
  EXPECT_NEAR(cost.params, 23.52e6, 0.01 * 23.52e6);
  EXPECT_NEAR(cost.flops, 1307e6, 0.03 * 1307e6);
  EXPECT_EQ(cost.params, 23520842);
  EXPECT_EQ(cost.flops, 1297829888);
}

TEST(CostModelTest, ClassifierInputsFollowFinalTensor) {
  EXPECT_EQ(classifier_inputs(preset("vgg19-cifar", 10)), 512);
  EXPECT_EQ(classifier_inputs(preset("resnet50-cifar", 10)), 2048);
  ArchitectureSpec flat{.name = "flat", .input = {4, 4, 1}, .units = {ConvUnit{.width = 3}},
                        .num_classes = 2};
  EXPECT_EQ(classifier_inputs(flat), 3 * 4 * 4);
}

TEST(CostModelTest, JsonFieldNames) {
  const CostReport cost{1, 2, 8, 16};
  const auto doc = cost_to_json(cost);
  EXPECT_EQ(doc.size(), 4u);
  EXPECT_EQ(doc.at("flops"), 1);
  EXPECT_EQ(doc.at("params"), 2);
  EXPECT_EQ(doc.at("weight_bytes"), 8);
  EXPECT_EQ(doc.at("activation_bytes_per_sample"), 16);
  EXPECT_EQ(cost_from_json(doc), cost);
}

}  // namespace
}  // namespace wt
