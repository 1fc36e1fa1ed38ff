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

#include "dlf/admission/patch.h"

#include <stdexcept>

namespace dlf::admission {

using nlohmann::json;

json AdmissionPatch::to_json() const {
  json out = json::array();
  for (const auto& op : ops) {
    out.push_back({{"op", op.op == PatchOp::Op::kAdd ? "add" : "replace"},
                   {"path", op.path},
                   {"value", op.value}});
  }
  return out;
}

std::string AdmissionPatch::to_text() const { return to_json().dump(2); }

AdmissionPatch AdmissionPatch::from_json(const json& doc) {
  if (!doc.is_array()) throw std::invalid_argument("patch: expected a list of operations");
  AdmissionPatch patch;
  for (const auto& j : doc) {
    if (!j.is_object() || !j.contains("op") || !j.contains("path") || !j.contains("value")) {
      throw std::invalid_argument("patch: operation needs op, path and value");
    }
    const std::string op = j.at("op").get<std::string>();
    if (op != "add" && op != "replace") throw std::invalid_argument("patch: unsupported op " + op);
    patch.ops.push_back({op == "add" ? PatchOp::Op::kAdd : PatchOp::Op::kReplace,
                         j.at("path").get<std::string>(), j.at("value")});
  }
  return patch;
}

Pod apply_patch(const Pod& pod, const AdmissionPatch& patch) {
  json doc = pod_to_json(pod);
  try {
    doc = doc.patch(patch.to_json());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("patch does not apply: ") + e.what());
  }
  Pod out = pod_from_json(doc);
  // The document form does not carry store bookkeeping.
  out.meta.uid = pod.meta.uid;
  out.meta.resource_version = pod.meta.resource_version;
  out.meta.owner_refs = pod.meta.owner_refs;
  out.meta.finalizers = pod.meta.finalizers;
  out.meta.deletion_requested = pod.meta.deletion_requested;
  return out;
}

}  // namespace dlf::admission
