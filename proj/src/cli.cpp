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

#include "wt/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "wt/cost_model.hpp"
#include "wt/planner.hpp"
#include "wt/presets.hpp"
#include "wt/report.hpp"
#include "wt/spec_json.hpp"

namespace wt {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string spec_file;
  std::string template_arg = "all";
  std::string planned_dir;
  std::string out_dir;
  std::string preset_name;
  int64_t num_classes = 10;
  double eps = 0.01;
  int64_t batch = 1;
  bool json = false;
  bool layers = false;
};

ArchitectureSpec load_valid(const fs::path& path) {
  ArchitectureSpec spec = load_spec(path);
  validate(spec);
  return spec;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot write file", path.string()));
  out << text;
}

std::string join_widths(const WidthVector& widths) {
  return fmt::format("{}", fmt::join(widths, ","));
}

int cmd_cost(const Options& opt, std::ostream& out) {
  const ArchitectureSpec spec = load_valid(opt.spec_file);
  const CostReport cost = compute_cost(spec);
  const MemoryEstimate mem = compute_memory(spec, opt.batch);

  if (opt.json) {
    nlohmann::json doc = cost_to_json(cost);
    doc["batch"] = mem.batch;
    doc["memory_total_bytes"] = mem.total_bytes;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  if (opt.layers) {
    out << fmt::format("{:<4}{:<22}{:>16}{:>16}{:>14}\n", "#", "layer", "output", "MACs", "params");
    const auto rows = layer_costs(spec);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << fmt::format("{:<4}{:<22}{:>16}{:>16}{:>14}\n", i, r.label,
                         fmt::format("{}x{}x{}", r.output.channels, r.output.height, r.output.width),
                         r.flops, r.params);
    }
    out << "\n";
  }
  out << fmt::format("model:        {}\n", spec.name);
  out << fmt::format("depth (D):    {}\n", depth(spec));
  out << fmt::format("params:       {} ({:.2f} M)\n", cost.params, cost.params / 1e6);
  out << fmt::format("flops (MACs): {} ({:.1f} M)\n", cost.flops, cost.flops / 1e6);
  out << fmt::format("weights:      {} bytes\n", cost.weight_bytes);
  out << fmt::format("activations:  {} bytes/sample\n", cost.activation_bytes_per_sample);
  out << fmt::format("memory:       {} bytes at batch {} ({:.1f} MiB)\n", mem.total_bytes, mem.batch,
                     mem.total_bytes / (1024.0 * 1024.0));
  return kExitOk;
}

int cmd_plan(const Options& opt, std::ostream& out, std::ostream& err) {
  const ArchitectureSpec spec = load_valid(opt.spec_file);
  const SolveOptions solve{.eps = opt.eps, .batch = opt.batch};

  std::vector<PlanOutcome> outcomes;
  if (opt.template_arg == "all") {
    outcomes = plan_all(spec, solve);
  } else {
    auto id = parse_template(opt.template_arg);
    if (!id) {
      err << fmt::format("unknown template '{}': expected a, b, c, d, e or all\n", opt.template_arg);
      return kExitSchema;
    }
    PlanOutcome outcome{.template_id = *id, .result = std::nullopt, .error = {}};
    try {
      outcome.result = solve_width(spec, *id, solve);
    } catch (const ToleranceError& e) {
      outcome.result = e.best();
      outcome.error = e.what();
    } catch (const std::invalid_argument& e) {
      outcome.error = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }

  const fs::path out_dir = opt.out_dir.empty() ? fs::path(".") : fs::path(opt.out_dir);
  fs::create_directories(out_dir);

  int code = kExitOk;
  nlohmann::json plans = nlohmann::json::array();
  for (const auto& o : outcomes) {
    if (!o.result) {
      err << "error: " << o.error << "\n";
      code = kExitValidation;
      continue;
    }
    const PlanResult& r = *o.result;
    save_spec(out_dir / fmt::format("{}.{}.json", spec.name, to_string(r.template_id)), r.spec);
    plans.push_back(plan_to_json(r));
    if (!r.tolerance_met) {
      err << "error: " << o.error << "\n";
      if (code == kExitOk) code = kExitTolerance;
    }
    if (!opt.json) {
      out << fmt::format(
          "template {}: n={} flops={} (err {:.3f}%) params={:.2f}M ({:.1f}% down) mem {:.1f}% down"
          "{}\n  widths=[{}]\n",
          to_string(r.template_id), r.solved_n, r.cost.flops, 100.0 * r.flops_rel_error,
          r.cost.params / 1e6, r.param_reduction_pct, r.mem_reduction_pct,
          r.tolerance_met ? "" : " [tolerance not met]", join_widths(r.widths));
    }
  }
  write_text(out_dir / fmt::format("{}.plan.json", spec.name), plans.dump(2) + "\n");
  if (opt.json) out << plans.dump(2) << "\n";
  return code;
}

int cmd_report(const Options& opt, std::ostream& out, std::ostream& err) {
  if (!fs::exists(opt.spec_file)) {
    err << fmt::format("missing base row: base spec '{}' not found\n", opt.spec_file);
    return kExitValidation;
  }
  const ArchitectureSpec base = load_valid(opt.spec_file);

  const fs::path dir(opt.planned_dir);
  if (!fs::is_directory(dir)) {
    err << fmt::format("planned spec directory '{}' not found\n", opt.planned_dir);
    return kExitSchema;
  }
  std::vector<LabeledSpec> planned;
  for (TemplateId id : kAllTemplates) {
    const fs::path file = dir / fmt::format("{}.{}.json", base.name, to_string(id));
    if (fs::exists(file)) planned.push_back({std::string(to_string(id)), load_valid(file)});
  }

  const auto rows = build_report(base, std::move(planned), opt.batch);
  const std::string csv = format_csv(rows);
  const fs::path out_dir = opt.out_dir.empty() ? dir : fs::path(opt.out_dir);
  fs::create_directories(out_dir);
  write_text(out_dir / fmt::format("{}.report.csv", base.name), csv);

  if (opt.json) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
      doc.push_back({{"template", r.label}, {"params", r.params},
                     {"param_pct_down", r.param_reduction_pct}, {"mem", r.mem_bytes},
                     {"mem_pct_down", r.mem_reduction_pct}, {"flops", r.flops}});
    }
    out << doc.dump(2) << "\n";
  } else {
    out << format_table(rows);
  }

  int code = kExitOk;
  const double base_flops = static_cast<double>(rows.front().flops);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double rel = std::abs(static_cast<double>(rows[i].flops) - base_flops) / base_flops;
    if (rel > opt.eps) {
      err << fmt::format("template {}: FLOPs differ from base by {:.3f}%\n", rows[i].label,
                         100.0 * rel);
      code = kExitTolerance;
    }
  }
  return code;
}

int cmd_preset(const Options& opt, std::ostream& out) {
  const ArchitectureSpec spec = preset(opt.preset_name, opt.num_classes);
  if (opt.out_dir.empty()) {
    out << dump_spec(spec);
  } else {
    fs::create_directories(opt.out_dir);
    save_spec(fs::path(opt.out_dir) / (spec.name + ".json"), spec);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Filter-distribution templates and analytic CNN cost reports", "width-templater"};
  app.require_subcommand(1);

  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_flag("--json", opt.json, "Machine-readable output");
    cmd->add_option("--batch", opt.batch, "Batch size for the memory estimate")
        ->check(CLI::PositiveNumber);
  };

  auto* cost = app.add_subcommand("cost", "Report params, FLOPs (MACs) and memory of a spec");
  cost->add_option("spec", opt.spec_file, "Architecture spec JSON")->required();
  cost->add_flag("--layers", opt.layers, "Print the per-layer breakdown");
  add_common(cost);

  auto* plan = app.add_subcommand("plan", "Apply templates under the FLOPs constraint");
  plan->add_option("spec", opt.spec_file, "Architecture spec JSON")->required();
  plan->add_option("template", opt.template_arg, "a, b, c, d, e or all");
  plan->add_option("--eps", opt.eps, "Relative FLOPs tolerance")->check(CLI::PositiveNumber);
  plan->add_option("--out", opt.out_dir, "Directory for emitted specs");
  add_common(plan);

  auto* report = app.add_subcommand("report", "Compare a base spec with its planned variants");
  report->add_option("base", opt.spec_file, "Base architecture spec JSON")->required();
  report->add_option("planned", opt.planned_dir, "Directory holding <name>.<template>.json")
      ->required();
  report->add_option("--eps", opt.eps, "Relative FLOPs tolerance")->check(CLI::PositiveNumber);
  report->add_option("--out", opt.out_dir, "Directory for the CSV (default: planned dir)");
  add_common(report);

  auto* preset_cmd = app.add_subcommand("preset", "Write a built-in baseline spec");
  preset_cmd->add_option("name", opt.preset_name, "vgg19-cifar or resnet50-cifar")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  preset_cmd->add_option("--classes", opt.num_classes, "Classifier size")->check(CLI::Range(2, 1 << 20));
  preset_cmd->add_option("--out", opt.out_dir, "Directory to write <name>.json into");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitSchema;
  }

  try {
    if (*cost) return cmd_cost(opt, out);
    if (*plan) return cmd_plan(opt, out, err);
    if (*report) return cmd_report(opt, out, err);
    if (*preset_cmd) return cmd_preset(opt, out);
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  }
  return kExitSchema;
}

}  // namespace wt
