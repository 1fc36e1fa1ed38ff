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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dlf/model/dataset.h"
#include "dlf/model/meta.h"
#include "dlf/model/pod.h"

namespace dlf {

// Order matches the Payload variant alternatives.
enum class Kind { kDataset, kVolumeClaim, kSecret, kConfigMap, kPod, kNamespace };

std::string_view to_string(Kind k);
std::optional<Kind> parse_kind(std::string_view s);  // also accepts lowercase plurals
bool is_namespaced(Kind k);

struct DatasetPayload {
  DatasetSpec spec;
  DatasetStatus status;

  bool operator==(const DatasetPayload&) const = default;
};

struct VolumeClaimPayload {
  std::string storage_class;
  std::string access_mode = "ReadWriteMany";
  std::map<std::string, std::string> attributes;
  std::optional<std::string> secret_name;

  bool operator==(const VolumeClaimPayload&) const = default;
};

struct SecretPayload {
  std::map<std::string, std::string> data;

  bool operator==(const SecretPayload&) const = default;
};

struct ConfigMapPayload {
  std::map<std::string, std::string> data;

  bool operator==(const ConfigMapPayload&) const = default;
};

struct PodPayload {
  PodSpec spec;

  bool operator==(const PodPayload&) const = default;
};

struct NamespacePayload {
  bool operator==(const NamespacePayload&) const = default;
};

using Payload = std::variant<DatasetPayload, VolumeClaimPayload, SecretPayload, ConfigMapPayload,
                             PodPayload, NamespacePayload>;

struct StoredObject {
  Kind kind = Kind::kDataset;
  ObjectMeta meta;
  Payload payload;

  bool operator==(const StoredObject&) const = default;

  template <typename T>
  const T& as() const { return std::get<T>(payload); }
  template <typename T>
  T& as() { return std::get<T>(payload); }
};

struct ObjectKey {
  std::string ns;
  std::string name;

  auto operator<=>(const ObjectKey&) const = default;
  std::string to_string() const { return ns + "/" + name; }
};

StoredObject make_object(const Dataset& ds);
StoredObject make_object(const Pod& pod);
StoredObject make_namespace(std::string name, Labels labels = {});
Dataset to_dataset(const StoredObject& obj);
Pod to_pod(const StoredObject& obj);

}  // namespace dlf
