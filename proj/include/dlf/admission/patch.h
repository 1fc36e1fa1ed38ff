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

#include <string>
#include <vector>

#include "json.hpp"

#include "dlf/model/pod.h"

namespace dlf::admission {

// RFC 6902 operation; only add and replace are ever generated.
struct PatchOp {
  enum class Op { kAdd, kReplace };

  Op op = Op::kAdd;
  std::string path;
  nlohmann::json value;

  bool operator==(const PatchOp&) const = default;
};

struct AdmissionPatch {
  std::vector<PatchOp> ops;

  bool empty() const { return ops.empty(); }
  bool operator==(const AdmissionPatch&) const = default;

  // [{"op":"add","path":...,"value":...}, ...]
  nlohmann::json to_json() const;
  // to_json() pretty-printed with two-space indent.
  std::string to_text() const;
  static AdmissionPatch from_json(const nlohmann::json& doc);
};

// Applies the patch to the pod's document form and parses the result back.
// Throws std::invalid_argument if an operation does not apply.
Pod apply_patch(const Pod& pod, const AdmissionPatch& patch);

}  // namespace dlf::admission
