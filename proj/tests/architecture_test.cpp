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

#include "wt/architecture.hpp"
#include "wt/planner.hpp"
#include "wt/presets.hpp"

namespace wt {
namespace {

ArchitectureSpec single_conv(int64_t width) {
  return {.name = "single", .input = {32, 32, 3}, .units = {ConvUnit{.width = width}},
          .num_classes = 10};
}

bool has_issue(const std::vector<ValidationIssue>& issues, std::optional<std::size_t> index,
               const std::string& fragment) {
  for (const auto& issue : issues)
    if (issue.unit_index == index && issue.message.find(fragment) != std::string::npos) return true;
  return false;
}

TEST(ValidateTest, VggPresetIsValidWithSixteenWidthBearingUnits) {
  const auto spec = preset("vgg19-cifar", 10);
  EXPECT_TRUE(check(spec).empty());
  EXPECT_EQ(depth(spec), 16);
  EXPECT_EQ(&validate(spec), &spec);
}

TEST(ValidateTest, ResNetPresetIsValid) {
  const auto spec = preset("resnet50-cifar", 10);
  EXPECT_TRUE(check(spec).empty());
  EXPECT_EQ(depth(spec), 17);
}

TEST(ValidateTest, ZeroWidthIsReportedAtItsIndex) {
  auto spec = preset("vgg19-cifar", 10);
  std::get<ConvUnit>(spec.units[3]) = ConvUnit{.width = 0};
  const auto issues = check(spec);
  EXPECT_TRUE(has_issue(issues, 3, "width must be >= 1"));
  EXPECT_THROW(validate(spec), ValidationError);
}

TEST(ValidateTest, SixHalvingPoolsCollapse32x32) {
  ArchitectureSpec spec = single_conv(8);
  for (int i = 0; i < 6; ++i) spec.units.emplace_back(PoolUnit{.factor = 2});
  const auto issues = check(spec);
  // 32 / 2^5 = 1 still fits; the sixth pool (unit 6) collapses it.
  EXPECT_TRUE(has_issue(issues, 6, "collapses"));
  EXPECT_EQ(issues.size(), 1u);
}

TEST(ValidateTest, ReportsEveryViolation) {
  ArchitectureSpec spec{.name = "bad", .input = {8, 8, 3},
                        .units = {ConvUnit{.width = -1, .kernel = 2, .stride = 0}},
                        .num_classes = 1};
  const auto issues = check(spec);
  EXPECT_TRUE(has_issue(issues, std::nullopt, "num_classes"));
  EXPECT_TRUE(has_issue(issues, 0, "width"));
  EXPECT_TRUE(has_issue(issues, 0, "kernel"));
  EXPECT_TRUE(has_issue(issues, 0, "stride"));

  try {
    validate(spec);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.issues().size(), issues.size());
    EXPECT_NE(std::string(e.what()).find("unit 0"), std::string::npos);
  }
}

TEST(ValidateTest, EmptyUnitsAndNoWidthBearingUnits) {
  ArchitectureSpec empty{.name = "empty", .input = {8, 8, 3}, .units = {}, .num_classes = 10};
  EXPECT_TRUE(has_issue(check(empty), std::nullopt, "must not be empty"));

  ArchitectureSpec pools_only{.name = "p", .input = {8, 8, 3}, .units = {PoolUnit{}, GlobalPoolUnit{}},
                              .num_classes = 10};
  EXPECT_TRUE(has_issue(check(pools_only), std::nullopt, "at least one"));
}

TEST(ValidateTest, BottleneckProjectionMustMatchWiring) {
  auto spec = preset("resnet50-cifar", 10);
  // unit 1 is the first block: 64 -> 256 channels needs a projection
  std::get<BottleneckUnit>(spec.units[1]).has_projection = false;
  EXPECT_TRUE(has_issue(check(spec), 1, "required"));

  spec = preset("resnet50-cifar", 10);
  // unit 2 takes 256 channels at stride 1: identity fits
  std::get<BottleneckUnit>(spec.units[2]).has_projection = true;
  EXPECT_TRUE(has_issue(check(spec), 2, "identity"));

  spec = preset("resnet50-cifar", 10);
  std::get<BottleneckUnit>(spec.units[2]).expansion = 2;
  EXPECT_TRUE(has_issue(check(spec), 2, "expansion"));
}

TEST(PresetTest, UnknownNameThrows) {
  EXPECT_THROW(preset("alexnet", 10), std::invalid_argument);
}

TEST(PresetTest, ClassCountOnlyChangesClassifier) {
  auto ten = preset("vgg19-cifar", 10);
  const auto hundred = preset("vgg19-cifar", 100);
  EXPECT_EQ(hundred.num_classes, 100);
  ten.num_classes = 100;
  EXPECT_EQ(ten, hundred);
}

TEST(PresetTest, VggWidthsArePyramidal) {
  const auto spec = preset("vgg19-cifar", 10);
  int64_t prev = 0;
  bool pooled_since_prev = false;
  for (const auto& unit : spec.units) {
    if (std::holds_alternative<PoolUnit>(unit)) {
      pooled_since_prev = true;
      continue;
    }
    const int64_t width = std::get<ConvUnit>(unit).width;
    if (prev != 0) {
      ASSERT_TRUE(width == prev || width == 2 * prev);
      if (width == 2 * prev) EXPECT_TRUE(pooled_since_prev);
    }
    prev = width;
    pooled_since_prev = false;
  }
}

TEST(PresetTest, ResNetStageStridesAndProjections) {
  const auto spec = preset("resnet50-cifar", 10);
  std::vector<std::size_t> projections;
  std::vector<std::size_t> strided;
  for (std::size_t i = 0; i < spec.units.size(); ++i) {
    if (const auto* b = std::get_if<BottleneckUnit>(&spec.units[i])) {
      if (b->has_projection) projections.push_back(i);
      if (b->stride == 2) strided.push_back(i);
    }
  }
  EXPECT_EQ(projections, (std::vector<std::size_t>{1, 4, 8, 14}));
  EXPECT_EQ(strided, (std::vector<std::size_t>{4, 8, 14}));
  EXPECT_TRUE(std::holds_alternative<GlobalPoolUnit>(spec.units.back()));
}

TEST(ExtractWidthsTest, Vgg) {
  const WidthVector expected = {64, 64, 128, 128, 256, 256, 256, 256,
                                512, 512, 512, 512, 512, 512, 512, 512};
  EXPECT_EQ(extract_widths(preset("vgg19-cifar", 10)), expected);
}

TEST(ExtractWidthsTest, ResNetStemThenBlockBaseWidths) {
  WidthVector expected = {64};
  for (auto [count, width] : {std::pair{3, 64}, {4, 128}, {6, 256}, {3, 512}})
    expected.insert(expected.end(), count, width);
  const auto widths = extract_widths(preset("resnet50-cifar", 10));
  EXPECT_EQ(widths.size(), 17u);
  EXPECT_EQ(widths, expected);
}

TEST(ExtractWidthsTest, SingleConv) {
  EXPECT_EQ(extract_widths(single_conv(8)), (WidthVector{8}));
}

TEST(ExtractWidthsTest, RoundTripsThroughReplaceWidths) {
  for (const auto& name : preset_names()) {
    const auto spec = preset(name, 10);
    EXPECT_EQ(replace_widths(spec, extract_widths(spec)), spec) << name;
  }
}

}  // namespace
}  // namespace wt
