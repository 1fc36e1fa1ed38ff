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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dlf/model/dataset.h"
#include "dlf/model/meta.h"

namespace dlf {

struct SecretKeyRef {
  std::string name;
  std::string key;

  bool operator==(const SecretKeyRef&) const = default;
};

// Exactly one of value / secret_key_ref is meaningful.
struct EnvVar {
  std::string name;
  std::string value;
  std::optional<SecretKeyRef> secret_key_ref;

  bool operator==(const EnvVar&) const = default;
};

struct VolumeMount {
  std::string name;
  std::string mount_path;

  bool operator==(const VolumeMount&) const = default;
};

struct Container {
  std::string name;
  std::string image;
  std::vector<EnvVar> env;
  std::vector<VolumeMount> volume_mounts;

  bool operator==(const Container&) const = default;
};

struct Volume {
  std::string name;
  std::string claim_name;

  bool operator==(const Volume&) const = default;
};

struct PodSpec {
  std::vector<Container> containers;
  std::vector<Volume> volumes;

  bool operator==(const PodSpec&) const = default;
};

struct Pod {
  ObjectMeta meta;
  PodSpec spec;

  bool operator==(const Pod&) const = default;
};

// Schema checks an admitted pod must pass: DNS-label names, unique
// containers/volumes, mounts reference declared volumes, absolute and
// per-container unique mount paths, unique env names.
ValidationResult validate_pod(const Pod& pod);

// Document form used for RFC 6902 patching. Empty lists are omitted.
nlohmann::json pod_to_json(const Pod& pod);
// Strict inverse of pod_to_json; throws std::invalid_argument on unknown or
// mistyped fields.
Pod pod_from_json(const nlohmann::json& doc);

}  // namespace dlf
