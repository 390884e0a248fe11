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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wt/architecture.hpp"

namespace wt {

/// Malformed JSON or a document that does not match the spec schema.
/// what() names the offending field path, e.g. "units[3].width".
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json spec_to_json(const ArchitectureSpec& spec);

/// Strict schema check: missing required fields, wrong types and unknown
/// fields all throw SchemaError. Does not run validate().
ArchitectureSpec spec_from_json(const nlohmann::json& doc);

/// Stable text form: keys sorted, two-space indent, trailing newline.
std::string dump_spec(const ArchitectureSpec& spec);

ArchitectureSpec load_spec(const std::filesystem::path& path);
void save_spec(const std::filesystem::path& path, const ArchitectureSpec& spec);

}  // namespace wt
