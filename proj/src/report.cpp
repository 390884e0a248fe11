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

#include "wt/report.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "wt/cost_model.hpp"

namespace wt {

namespace {

double pct_down(int64_t base, int64_t value) {
  return base == 0 ? 0.0 : 100.0 * static_cast<double>(base - value) / static_cast<double>(base);
}

ReportRow make_row(std::string label, const ArchitectureSpec& spec, int64_t batch) {
  return {std::move(label), compute_params(spec), 0.0, compute_memory(spec, batch).total_bytes, 0.0,
          compute_flops(spec)};
}

constexpr double kMega = 1e6;
constexpr double kMiB = 1024.0 * 1024.0;

}  // namespace

std::vector<ReportRow> build_report(const ArchitectureSpec& base, std::vector<LabeledSpec> planned,
                                    int64_t batch) {
  std::sort(planned.begin(), planned.end(),
            [](const LabeledSpec& x, const LabeledSpec& y) { return x.label < y.label; });

  std::vector<ReportRow> rows;
  rows.push_back(make_row("base", base, batch));
  const int64_t base_params = rows.front().params;
  const int64_t base_mem = rows.front().mem_bytes;
  for (const auto& p : planned) {
    ReportRow row = make_row(p.label, p.spec, batch);
    row.param_reduction_pct = pct_down(base_params, row.params);
    row.mem_reduction_pct = pct_down(base_mem, row.mem_bytes);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table(const std::vector<ReportRow>& rows) {
  std::string out = fmt::format("{:<10}{:>12}{:>9}{:>14}{:>9}{:>14}\n", "Template", "Param (M)",
                                "% down", "Mem (MiB)", "% down", "FLOPs (M)");
  out += std::string(68, '-') + "\n";
  for (const auto& r : rows) {
    out += fmt::format("{:<10}{:>12.2f}{:>9.1f}{:>14.1f}{:>9.1f}{:>14.1f}\n", r.label,
                       static_cast<double>(r.params) / kMega, r.param_reduction_pct,
                       static_cast<double>(r.mem_bytes) / kMiB, r.mem_reduction_pct,
                       static_cast<double>(r.flops) / kMega);
  }
  return out;
}

std::string format_csv(const std::vector<ReportRow>& rows) {
  std::string out = "template,params,param_pct_down,mem,mem_pct_down,flops\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{:.1f},{},{:.1f},{}\n", r.label, r.params, r.param_reduction_pct,
                       r.mem_bytes, r.mem_reduction_pct, r.flops);
  }
  return out;
}

}  // namespace wt
