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

#include "wt/spec_json.hpp"

#include <fmt/format.h>

#include <fstream>
#include <initializer_list>
#include <string_view>

namespace wt {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, std::string_view what) {
  throw SchemaError(fmt::format("{}: {}", path.empty() ? "<root>" : path, what));
}

std::string child(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : fmt::format("{}.{}", path, key);
}

void expect_object(const json& j, const std::string& path,
                   std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(child(path, key), "unknown field");
  }
}

const json* find(const json& j, std::string_view key) {
  auto it = j.find(std::string(key));
  return it == j.end() ? nullptr : &*it;
}

int64_t read_int(const json& j, const std::string& path, std::string_view key,
                 std::optional<int64_t> fallback = std::nullopt) {
  const json* v = find(j, key);
  if (v == nullptr) {
    if (fallback) return *fallback;
    fail(child(path, key), "missing required field");
  }
  if (!v->is_number_integer()) fail(child(path, key), "expected an integer");
  return v->get<int64_t>();
}

bool read_bool(const json& j, const std::string& path, std::string_view key, bool fallback) {
  const json* v = find(j, key);
  if (v == nullptr) return fallback;
  if (!v->is_boolean()) fail(child(path, key), "expected a boolean");
  return v->get<bool>();
}

std::string read_string(const json& j, const std::string& path, std::string_view key) {
  const json* v = find(j, key);
  if (v == nullptr) fail(child(path, key), "missing required field");
  if (!v->is_string()) fail(child(path, key), "expected a string");
  return v->get<std::string>();
}

Unit unit_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::string kind = read_string(j, path, "kind");
  if (kind == "conv") {
    expect_object(j, path, {"kind", "width", "kernel", "stride", "has_bn"});
    return ConvUnit{.width = read_int(j, path, "width"),
                    .kernel = read_int(j, path, "kernel", 3),
                    .stride = read_int(j, path, "stride", 1),
                    .has_bn = read_bool(j, path, "has_bn", true)};
  }
  if (kind == "pool") {
    expect_object(j, path, {"kind", "factor"});
    return PoolUnit{.factor = read_int(j, path, "factor", 2)};
  }
  if (kind == "bottleneck") {
    expect_object(j, path, {"kind", "base_width", "expansion", "stride", "has_projection"});
    return BottleneckUnit{
        .base_width = read_int(j, path, "base_width"),
        .expansion = read_int(j, path, "expansion", BottleneckUnit::kExpansion),
        .stride = read_int(j, path, "stride", 1),
        .has_projection = read_bool(j, path, "has_projection", false)};
  }
  if (kind == "gap") {
    expect_object(j, path, {"kind"});
    return GlobalPoolUnit{};
  }
  fail(child(path, "kind"), fmt::format("unknown unit kind '{}'", kind));
}

struct UnitToJson {
  json operator()(const ConvUnit& u) const {
    return {{"kind", "conv"}, {"width", u.width}, {"kernel", u.kernel},
            {"stride", u.stride}, {"has_bn", u.has_bn}};
  }
  json operator()(const PoolUnit& u) const { return {{"kind", "pool"}, {"factor", u.factor}}; }
  json operator()(const BottleneckUnit& u) const {
    return {{"kind", "bottleneck"}, {"base_width", u.base_width}, {"expansion", u.expansion},
            {"stride", u.stride}, {"has_projection", u.has_projection}};
  }
  json operator()(const GlobalPoolUnit&) const { return {{"kind", "gap"}}; }
};

}  // namespace

json spec_to_json(const ArchitectureSpec& spec) {
  json units = json::array();
  for (const auto& unit : spec.units) units.push_back(std::visit(UnitToJson{}, unit));
  return {{"name", spec.name},
          {"input", {{"h", spec.input.height}, {"w", spec.input.width}, {"c", spec.input.channels}}},
          {"num_classes", spec.num_classes},
          {"units", std::move(units)}};
}

ArchitectureSpec spec_from_json(const json& doc) {
  expect_object(doc, "", {"name", "input", "num_classes", "units"});
  ArchitectureSpec spec;
  spec.name = read_string(doc, "", "name");

  const json* input = find(doc, "input");
  if (input == nullptr) fail("input", "missing required field");
  expect_object(*input, "input", {"h", "w", "c"});
  spec.input = {read_int(*input, "input", "h"), read_int(*input, "input", "w"),
                read_int(*input, "input", "c")};

  spec.num_classes = read_int(doc, "", "num_classes");

  const json* units = find(doc, "units");
  if (units == nullptr) fail("units", "missing required field");
  if (!units->is_array()) fail("units", "expected an array");
  for (std::size_t i = 0; i < units->size(); ++i)
    spec.units.push_back(unit_from_json((*units)[i], fmt::format("units[{}]", i)));
  return spec;
}

std::string dump_spec(const ArchitectureSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

ArchitectureSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(fmt::format("{}: cannot open file", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
  }
  try {
    return spec_from_json(doc);
  } catch (const SchemaError& e) {
    throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_spec(const std::filesystem::path& path, const ArchitectureSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot write file", path.string()));
  out << dump_spec(spec);
}

}  // namespace wt
