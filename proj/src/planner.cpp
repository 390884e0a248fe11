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

#include "wt/planner.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <future>

namespace wt {

namespace {

std::string tolerance_message(const PlanResult& r) {
  return fmt::format("template {}: best n = {} gives FLOPs error {:.4f}%, above tolerance",
                     to_string(r.template_id), r.solved_n, 100.0 * r.flops_rel_error);
}

double reduction_pct(int64_t base, int64_t value) {
  return base == 0 ? 0.0 : 100.0 * static_cast<double>(base - value) / static_cast<double>(base);
}

int64_t abs_diff(int64_t a, int64_t b) { return a > b ? a - b : b - a; }

enum class Shortcuts {
  kRecompute,    // projection wherever channels or stride differ
  kStridedOnly,  // lower envelope: only projections no width can remove
  kAll,          // upper envelope: a projection on every block
};

ArchitectureSpec with_widths(const ArchitectureSpec& spec, const WidthVector& widths,
                             Shortcuts shortcuts) {
  ArchitectureSpec out = spec;
  std::size_t next = 0;
  int64_t channels = spec.input.channels;
  for (auto& unit : out.units) {
    if (auto* conv = std::get_if<ConvUnit>(&unit)) {
      conv->width = widths[next++];
      channels = conv->width;
    } else if (auto* block = std::get_if<BottleneckUnit>(&unit)) {
      block->base_width = widths[next++];
      switch (shortcuts) {
        case Shortcuts::kRecompute: block->has_projection = needs_projection(channels, *block); break;
        case Shortcuts::kStridedOnly: block->has_projection = block->stride != 1; break;
        case Shortcuts::kAll: block->has_projection = true; break;
      }
      channels = block->out_channels();
    }
  }
  return out;
}

class FlopsOfN {
 public:
  FlopsOfN(const ArchitectureSpec& spec, TemplateId id, Shortcuts shortcuts)
      : spec_(spec), id_(id), shortcuts_(shortcuts) {}

  int64_t operator()(int64_t n) const {
    return compute_flops(with_widths(spec_, candidate_widths(spec_, id_, n), shortcuts_));
  }

 private:
  const ArchitectureSpec& spec_;
  TemplateId id_;
  Shortcuts shortcuts_;
};

// Smallest n in [lo, hi] with f(n) >= target for nondecreasing f, or hi + 1.
// Brackets by doubling from lo before bisecting.
int64_t first_reaching(const FlopsOfN& f, int64_t target, int64_t lo, int64_t hi) {
  if (f(lo) >= target) return lo;
  int64_t below = lo;  // f(below) < target
  int64_t above = lo;
  while (above < hi) {
    above = std::min(above * 2, hi);
    if (f(above) >= target) break;
    below = above;
  }
  if (f(above) < target) return hi + 1;
  while (above - below > 1) {
    const int64_t mid = below + (above - below) / 2;
    (f(mid) >= target ? above : below) = mid;
  }
  return above;
}

// Closest n in [lo, cap] to target, smaller n on ties.
//
// FLOPs(n) is nondecreasing except where a bottleneck shortcut appears or
// disappears as channel counts start or stop matching. It is bounded below
// and above by the two fixed-shortcut envelopes, which are monotone. A first
// guess from the upper envelope gives an error bound; only n whose envelope
// interval comes within that bound can win, and those are scanned.
int64_t closest_n(const ArchitectureSpec& spec, TemplateId id, int64_t target, int64_t lo,
                  int64_t cap) {
  const FlopsOfN actual(spec, id, Shortcuts::kRecompute);
  const FlopsOfN lower(spec, id, Shortcuts::kStridedOnly);
  const FlopsOfN upper(spec, id, Shortcuts::kAll);

  int64_t guess = std::min(first_reaching(upper, target, lo, cap), cap);
  int64_t bound = abs_diff(actual(guess), target);
  if (guess > lo) bound = std::min(bound, abs_diff(actual(guess - 1), target));

  // Window: upper(n) >= target - bound and lower(n) <= target + bound.
  const int64_t first = first_reaching(upper, target - bound, lo, cap);
  const int64_t past = first_reaching(lower, target + bound + 1, lo, cap);

  int64_t best_n = guess;
  int64_t best_err = abs_diff(actual(guess), target);
  for (int64_t n = first; n < past; ++n) {
    const int64_t err = abs_diff(actual(n), target);
    if (err < best_err || (err == best_err && n < best_n)) {
      best_err = err;
      best_n = n;
    }
  }
  return best_n;
}

}  // namespace

ToleranceError::ToleranceError(PlanResult best)
    : std::runtime_error(tolerance_message(best)), best_(std::move(best)) {}

ArchitectureSpec replace_widths(const ArchitectureSpec& spec, const WidthVector& widths) {
  const auto d = static_cast<std::size_t>(depth(spec));
  if (widths.size() != d)
    throw std::invalid_argument(
        fmt::format("width vector has {} entries, spec has {} width-bearing units", widths.size(), d));
  return with_widths(spec, widths, Shortcuts::kRecompute);
}

WidthVector candidate_widths(const ArchitectureSpec& spec, TemplateId id, int64_t n) {
  const WidthVector base = extract_widths(spec);
  const int64_t w_min = base.empty() ? 1 : *std::min_element(base.begin(), base.end());
  return template_widths(id, w_min, n, static_cast<int64_t>(base.size()));
}

PlanResult solve_width(const ArchitectureSpec& spec, TemplateId id, const SolveOptions& options) {
  validate(spec);
  if (!(options.eps > 0.0)) throw std::invalid_argument("eps must be > 0");

  const WidthVector base = extract_widths(spec);
  const int64_t w_min = *std::min_element(base.begin(), base.end());
  // Fail early on degenerate depth.
  template_widths(id, w_min, w_min, static_cast<int64_t>(base.size()));

  const CostReport base_cost = compute_cost(spec);
  const int64_t n =
      closest_n(spec, id, base_cost.flops, w_min, std::max(options.max_width, w_min));

  PlanResult result;
  result.template_id = id;
  result.solved_n = n;
  result.widths = candidate_widths(spec, id, n);
  result.spec = replace_widths(spec, result.widths);
  result.spec.name = fmt::format("{}.{}", spec.name, to_string(id));
  result.cost = compute_cost(result.spec);
  result.base_cost = base_cost;
  result.flops_rel_error = static_cast<double>(abs_diff(result.cost.flops, base_cost.flops)) /
                           static_cast<double>(base_cost.flops);
  result.param_reduction_pct = reduction_pct(base_cost.params, result.cost.params);
  result.mem_reduction_pct = reduction_pct(compute_memory(spec, options.batch).total_bytes,
                                           compute_memory(result.spec, options.batch).total_bytes);
  result.tolerance_met = result.flops_rel_error <= options.eps;
  if (!result.tolerance_met) throw ToleranceError(std::move(result));
  return result;
}

std::vector<PlanOutcome> plan_all(const ArchitectureSpec& spec, const SolveOptions& options) {
  auto run = [&spec, &options](TemplateId id) {
    PlanOutcome outcome{.template_id = id, .result = std::nullopt, .error = {}};
    try {
      outcome.result = solve_width(spec, id, options);
    } catch (const ToleranceError& e) {
      outcome.result = e.best();
      outcome.error = e.what();
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
    return outcome;
  };

  std::vector<PlanOutcome> outcomes;
  outcomes.reserve(kAllTemplates.size());
  if (options.parallel) {
    std::vector<std::future<PlanOutcome>> pending;
    for (TemplateId id : kAllTemplates) pending.push_back(std::async(std::launch::async, run, id));
    for (auto& f : pending) outcomes.push_back(f.get());
  } else {
    for (TemplateId id : kAllTemplates) outcomes.push_back(run(id));
  }
  return outcomes;
}

nlohmann::json plan_to_json(const PlanResult& r) {
  return {{"template", std::string(to_string(r.template_id))},
          {"n", r.solved_n},
          {"widths", r.widths},
          {"cost", cost_to_json(r.cost)},
          {"base_cost", cost_to_json(r.base_cost)},
          {"flops_rel_error", r.flops_rel_error},
          {"param_reduction_pct", r.param_reduction_pct},
          {"mem_reduction_pct", r.mem_reduction_pct},
          {"tolerance_met", r.tolerance_met}};
}

}  // namespace wt
