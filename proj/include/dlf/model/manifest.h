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

#include <stdexcept>
#include <string>
#include <string_view>

#include "dlf/model/dataset.h"
#include "dlf/model/pod.h"

namespace YAML {
class Emitter;
class Node;
}  // namespace YAML

namespace dlf {

inline constexpr std::string_view kDatasetApiVersion = "com.ie.ibm.hpsys/v1alpha1";
inline constexpr std::string_view kDefaultNamespace = "default";

// Parse failure. line/column are 1-based; 0 when no position is known.
class ManifestError : public std::runtime_error {
 public:
  ManifestError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Strict Dataset manifest:
//
//   apiVersion: com.ie.ibm.hpsys/v1alpha1
//   kind: Dataset
//   metadata: {name, namespace?, labels?, annotations?}
//   spec:
//     local:
//       type: COS | NFS | ARCHIVE
//       <per-type string fields>
//
// Unknown or duplicate keys are errors. Field values are not validated here;
// see validate_dataset. Status starts Pending.
Dataset parse_manifest(std::string_view text);

// Inverse of parse_manifest for user-facing fields (status is not emitted).
std::string serialize_manifest(const Dataset& ds);

// `apiVersion: v1`, `kind: Pod`, metadata + spec in the usual pod shape
// (containers[].env/volumeMounts, volumes[].persistentVolumeClaim).
Pod parse_pod_manifest(std::string_view text);

// Building blocks shared with the snapshot codec.
DatasetSpec decode_dataset_source(const YAML::Node& local);
void emit_dataset_source(YAML::Emitter& out, const DatasetSpec& spec);
Pod decode_pod(const YAML::Node& doc);

}  // namespace dlf
