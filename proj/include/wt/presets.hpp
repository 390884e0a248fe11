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

#include <string>
#include <string_view>
#include <vector>

#include "wt/architecture.hpp"

namespace wt {

/// Names accepted by preset(): "vgg19-cifar" and "resnet50-cifar".
std::vector<std::string> preset_names();

/// Pyramidal 32x32 baselines: widths double whenever the feature map halves.
/// Throws std::invalid_argument for an unknown name.
ArchitectureSpec preset(std::string_view name, int64_t num_classes = 10);

}  // namespace wt
