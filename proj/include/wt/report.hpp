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
#include <utility>
#include <vector>

#include "wt/architecture.hpp"

namespace wt {

/// One line of the resource comparison table. Reductions are relative to
/// the base row, so the base row always reports 0.
struct ReportRow {
  std::string label;  // "base" or a template letter
  int64_t params = 0;
  double param_reduction_pct = 0.0;
  int64_t mem_bytes = 0;  // weights + batch * activations
  double mem_reduction_pct = 0.0;
  int64_t flops = 0;
};

struct LabeledSpec {
  std::string label;
  ArchitectureSpec spec;
};

/// Rows in the order base, then `planned` sorted by label.
std::vector<ReportRow> build_report(const ArchitectureSpec& base, std::vector<LabeledSpec> planned,
                                    int64_t batch);

/// Aligned text table: params in millions, memory in MB, FLOPs in millions.
std::string format_table(const std::vector<ReportRow>& rows);

/// Header "template,params,param_pct_down,mem,mem_pct_down,flops"; counts are
/// raw integers (mem in bytes), percentages carry one decimal.
std::string format_csv(const std::vector<ReportRow>& rows);

}  // namespace wt
