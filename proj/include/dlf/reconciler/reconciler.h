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

#include <chrono>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlf/reconciler/work_queue.h"
#include "dlf/s3/probe.h"
#include "dlf/store/store.h"

namespace dlf {

inline constexpr std::string_view kCleanupFinalizer = "dlf/cleanup";
inline constexpr std::string_view kFingerprintAnnotation = "dlf.ibm.com/spec-fingerprint";
inline constexpr std::string_view kDatasetLabel = "dlf.ibm.com/dataset";

// Storage class backing each dataset type's volume claim.
std::string_view storage_class_for(DatasetType type);

struct ReconcileOutcome {
  enum class Action { kNoChange, kCreated, kUpdated, kDeleted, kRequeueAfter, kFailed };

  Action action = Action::kNoChange;
  std::chrono::milliseconds requeue_after{0};
  std::string reason;
  std::vector<std::pair<Kind, std::string>> objects_touched;

  bool requeue() const { return action == Action::kRequeueAfter; }
};

std::string_view to_string(ReconcileOutcome::Action a);

struct ReconcilerOptions {
  std::chrono::milliseconds probe_timeout = s3::kDefaultProbeTimeout;
  BackoffPolicy backoff;
};

// One reconcile pass drives a Dataset toward its fixed point:
//   finalizer dlf/cleanup present, Secret <name> (COS) holding the key pair,
//   VolumeClaim <name> with the type's storage class, both owned by the
//   Dataset; spec scrubbed of secretAccessKey; status Ready after a
//   successful probe (Failed + requeue otherwise); fingerprint annotation set.
// A pass that finds the fixed point already in place performs no writes.
class Reconciler {
 public:
  Reconciler(Store& store, s3::Prober& prober, ReconcilerOptions options = {});

  ReconcileOutcome reconcile(const ObjectKey& key);

  // Deletes dependents owned by the dataset's uid, then releases the
  // finalizer. Requires dataset.meta.deletion_requested.
  ReconcileOutcome garbage_collect(const Dataset& dataset);

  Backoff& backoff() { return backoff_; }

 private:
  ReconcileOutcome reconcile_live(const ObjectKey& key, StoredObject obj);
  ReconcileOutcome requeue(const ObjectKey& key, std::string reason,
                           std::vector<std::pair<Kind, std::string>> touched = {});

  Store& store_;
  s3::Prober& prober_;
  ReconcilerOptions options_;
  Backoff backoff_;
};

}  // namespace dlf
