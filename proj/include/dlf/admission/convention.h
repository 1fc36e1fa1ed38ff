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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlf/model/meta.h"

namespace dlf::admission {

inline constexpr std::string_view kMonitorLabel = "monitor-pods-datasets";
inline constexpr std::string_view kMonitorValue = "enabled";
inline constexpr std::string_view kMountRoot = "/mnt/datasets/";

enum class UseAs { kMount, kConfigMap };
std::string_view to_string(UseAs u);

enum class AdmissionErrc {
  kMalformedConvention,
  kDatasetNotFound,
  kDatasetNotReady,
  kMountPathCollision,
  kUnsupportedAccess,
};
std::string_view to_string(AdmissionErrc e);

class AdmissionError : public std::runtime_error {
 public:
  AdmissionError(AdmissionErrc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  AdmissionErrc code() const { return code_; }

 private:
  AdmissionErrc code_;
};

// One `dataset.<N>.*` label group.
struct DatasetRef {
  int index = 0;
  std::string id;
  UseAs useas = UseAs::kMount;
  std::optional<std::string> mount_path_override;

  bool operator==(const DatasetRef&) const = default;
};

// Parses the pod label convention:
//   dataset.<N>.id         dataset name (required for each N)
//   dataset.<N>.useas      mount | configmap  (dataset.<N>.uses is an alias)
//   dataset.<N>.mountpath  optional absolute path, mount refs only
// Sorted by N. Throws AdmissionError(kMalformedConvention).
std::vector<DatasetRef> extract_dataset_refs(const Labels& labels);

// True if at least one index carries an id together with a known useas value.
// Never throws.
bool has_dataset_pair(const Labels& labels);

// "/mnt/datasets/<id>"
std::string default_mount_path(std::string_view id);

// Uppercased id, '-' replaced by '_': "ds-a" -> "DS_A".
std::string env_prefix(std::string_view id);

}  // namespace dlf::admission
