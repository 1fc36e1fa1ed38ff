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

#include "dlf/store/object.h"

#include <array>

namespace dlf {

namespace {

struct KindName {
  Kind kind;
  std::string_view name;
  std::string_view plural;
};

constexpr std::array<KindName, 6> kKinds = {{
    {Kind::kDataset, "Dataset", "datasets"},
    {Kind::kVolumeClaim, "VolumeClaim", "volumeclaims"},
    {Kind::kSecret, "Secret", "secrets"},
    {Kind::kConfigMap, "ConfigMap", "configmaps"},
    {Kind::kPod, "Pod", "pods"},
    {Kind::kNamespace, "Namespace", "namespaces"},
}};

}  // namespace

std::string_view to_string(Kind k) {
  for (const auto& e : kKinds) {
    if (e.kind == k) return e.name;
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view s) {
  for (const auto& e : kKinds) {
    if (s == e.name || s == e.plural || s == e.plural.substr(0, e.plural.size() - 1)) return e.kind;
  }
  if (s == "pvc" || s == "persistentvolumeclaim") return Kind::kVolumeClaim;
  if (s == "ns") return Kind::kNamespace;
  return std::nullopt;
}

bool is_namespaced(Kind k) { return k != Kind::kNamespace; }

StoredObject make_object(const Dataset& ds) {
  return StoredObject{Kind::kDataset, ds.meta, DatasetPayload{ds.spec, ds.status}};
}

StoredObject make_object(const Pod& pod) {
  return StoredObject{Kind::kPod, pod.meta, PodPayload{pod.spec}};
}

StoredObject make_namespace(std::string name, Labels labels) {
  StoredObject obj{Kind::kNamespace, {}, NamespacePayload{}};
  obj.meta.name = std::move(name);
  obj.meta.labels = std::move(labels);
  return obj;
}

Dataset to_dataset(const StoredObject& obj) {
  const auto& p = obj.as<DatasetPayload>();
  return Dataset{obj.meta, p.spec, p.status};
}

Pod to_pod(const StoredObject& obj) {
  return Pod{obj.meta, obj.as<PodPayload>().spec};
}

}  // namespace dlf
