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

#include "dlf/admission/convention.h"
#include "dlf/admission/patch.h"
#include "dlf/store/store.h"

namespace dlf::admission {

struct AdmissionOptions {
  // Admit pods whose datasets exist but are not Ready yet.
  bool allow_pending = false;
};

struct AdmissionDecision {
  bool allowed = true;
  AdmissionPatch patch;
  std::string reason;  // rejection message; empty when allowed
  std::optional<AdmissionErrc> error;
};

// Namespace carries monitor-pods-datasets=enabled and the pod has at least
// one well-formed id/useas pair.
bool should_mutate(const Pod& pod, const Labels& namespace_labels);

// Operations, in ref order:
//   mount:     add volume <id> (claim <id>), then one mount per container at
//              the override path or /mnt/datasets/<id>
//   configmap: per container, <ID>_ENDPOINT, <ID>_BUCKET and the two
//              secret-sourced credential variables
// A mount ref whose volume already exists contributes nothing, as does an
// env var already present with the same value.
// Throws AdmissionError.
AdmissionPatch build_patch(const Pod& pod, const std::vector<DatasetRef>& refs, const Store& store,
                           const std::string& ns, const AdmissionOptions& options = {});

// should_mutate -> extract_dataset_refs -> build_patch, errors folded into a
// rejection. The namespace record is looked up in the store; a missing one
// counts as unlabeled.
AdmissionDecision admit(const Pod& pod, const std::string& ns, const Store& store,
                        const AdmissionOptions& options = {});

}  // namespace dlf::admission
