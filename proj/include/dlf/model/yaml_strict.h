/*
 * Copyright 2026 The Dataset Lifecycle Framework Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Strict accessors over yaml-cpp nodes. yaml-cpp keeps duplicate mapping keys
// and resolves lookups to the first one, so every mapping is checked for
// duplicates before any field is read.

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

#include "dlf/model/manifest.h"
#include "dlf/model/meta.h"

namespace dlf::yaml {

[[noreturn]] void fail(const YAML::Node& at, const std::string& message);

// Parses a single- or multi-document stream; syntax errors become
// ManifestError with 1-based positions.
std::vector<YAML::Node> load_documents(std::string_view text);

// Node must be a mapping without duplicate keys and with keys drawn from
// `allowed` (an empty list allows any key).
void check_map(const YAML::Node& node, std::string_view where,
               std::initializer_list<std::string_view> allowed = {});

// Scalar field of a checked mapping. Missing -> nullopt; null -> "".
std::optional<std::string> opt_scalar(const YAML::Node& map, std::string_view key,
                                      std::string_view where);
std::string req_scalar(const YAML::Node& map, std::string_view key, std::string_view where);

Labels string_map(const YAML::Node& node, std::string_view where);

// Scalars become strings; duplicate keys are rejected at any depth.
nlohmann::json to_json(const YAML::Node& node);

}  // namespace dlf::yaml
