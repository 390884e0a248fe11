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
#include <vector>

#include "json.hpp"
#include "wt/architecture.hpp"
#include "wt/cost_model.hpp"
#include "wt/templates.hpp"

namespace wt {

struct SolveOptions {
  double eps = 0.01;          // max |flops - base| / base
  int64_t batch = 1;          // batch used for the memory estimate
  int64_t max_width = 65536;  // upper end of the search for n
  bool parallel = true;       // plan_all only
};

struct PlanResult {
  TemplateId template_id = TemplateId::kA;
  int64_t solved_n = 0;
  WidthVector widths;
  CostReport cost;
  CostReport base_cost;
  double flops_rel_error = 0.0;
  double param_reduction_pct = 0.0;
  double mem_reduction_pct = 0.0;
  bool tolerance_met = false;
  /// The transformed architecture, named "<base name>.<template>".
  ArchitectureSpec spec;
};

/// Raised when the best n still misses the FLOPs tolerance; carries that n.
class ToleranceError : public std::runtime_error {
 public:
  explicit ToleranceError(PlanResult best);

  const PlanResult& best() const { return best_; }

 private:
  PlanResult best_;
};

/// Same topology with width-bearing units reassigned in order. Bottleneck
/// projection flags follow the new channel counts; the classifier input
/// follows the final tensor. Throws std::invalid_argument on length mismatch.
ArchitectureSpec replace_widths(const ArchitectureSpec& spec, const WidthVector& widths);

/// Candidate distribution for a template at maximum width n.
WidthVector candidate_widths(const ArchitectureSpec& spec, TemplateId id, int64_t n);

/// Integer n closest to the base FLOPs, ties toward the smaller n.
/// FLOPs(n) is nondecreasing, so this brackets n by doubling from w_min and
/// then bisects. Throws ToleranceError when the closest n misses eps, and
/// std::invalid_argument for degenerate specs (D < 2 for a, c, d, e).
PlanResult solve_width(const ArchitectureSpec& spec, TemplateId id,
                       const SolveOptions& options = {});

struct PlanOutcome {
  TemplateId template_id = TemplateId::kA;
  std::optional<PlanResult> result;  // present on success and on tolerance failure
  std::string error;                 // empty on success

  bool ok() const { return error.empty(); }
};

/// One outcome per template in order a..e. Errors are recorded per template.
std::vector<PlanOutcome> plan_all(const ArchitectureSpec& spec, const SolveOptions& options = {});

nlohmann::json plan_to_json(const PlanResult& result);

}  // namespace wt
