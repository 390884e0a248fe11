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

#include "wt/presets.hpp"

#include <array>
#include <stdexcept>

namespace wt {

namespace {

ArchitectureSpec vgg19_cifar(int64_t num_classes) {
  // Blocks of (count, width); each block is followed by a 2x pool.
  constexpr std::array<std::pair<int, int64_t>, 5> kBlocks = {
      {{2, 64}, {2, 128}, {4, 256}, {4, 512}, {4, 512}}};

  ArchitectureSpec spec{.name = "vgg19-cifar", .input = {32, 32, 3}, .units = {},
                        .num_classes = num_classes};
  for (const auto& [count, width] : kBlocks) {
    for (int i = 0; i < count; ++i)
      spec.units.emplace_back(ConvUnit{.width = width, .kernel = 3, .stride = 1, .has_bn = true});
    spec.units.emplace_back(PoolUnit{.factor = 2});
  }
  return spec;
}

ArchitectureSpec resnet50_cifar(int64_t num_classes) {
  constexpr std::array<std::pair<int, int64_t>, 4> kStages = {
      {{3, 64}, {4, 128}, {6, 256}, {3, 512}}};

  ArchitectureSpec spec{.name = "resnet50-cifar", .input = {32, 32, 3}, .units = {},
                        .num_classes = num_classes};
  spec.units.emplace_back(ConvUnit{.width = 64, .kernel = 3, .stride = 1, .has_bn = true});
  int64_t channels = 64;
  for (std::size_t s = 0; s < kStages.size(); ++s) {
    const auto [blocks, base] = kStages[s];
    for (int b = 0; b < blocks; ++b) {
      BottleneckUnit block{.base_width = base, .stride = (s > 0 && b == 0) ? 2 : 1};
      block.has_projection = needs_projection(channels, block);
      channels = block.out_channels();
      spec.units.emplace_back(block);
    }
  }
  spec.units.emplace_back(GlobalPoolUnit{});
  return spec;
}

}  // namespace

std::vector<std::string> preset_names() { return {"vgg19-cifar", "resnet50-cifar"}; }

ArchitectureSpec preset(std::string_view name, int64_t num_classes) {
  if (name == "vgg19-cifar") return vgg19_cifar(num_classes);
  if (name == "resnet50-cifar") return resnet50_cifar(num_classes);
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

}  // namespace wt
