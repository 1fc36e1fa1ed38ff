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
#include <memory>
#include <optional>
#include <string>

#include "dlf/admission/admission.h"
#include "dlf/reconciler/controller.h"
#include "dlf/store/store.h"

namespace dlf::ctl {

enum class ProbeMode { kS3, kNone };

struct ClusterOptions {
  int workers = 2;
  ProbeMode probe = ProbeMode::kS3;
  std::chrono::milliseconds probe_timeout = s3::kDefaultProbeTimeout;
  admission::AdmissionOptions admission;
};

// Store + controller running in-process: the simulated cluster every CLI
// command and scenario talks to.
class Cluster {
 public:
  explicit Cluster(ClusterOptions options = {});
  ~Cluster();
  Cluster(const Cluster&) = delete;
  Cluster& operator=(const Cluster&) = delete;

  Store& store() { return store_; }
  Controller& controller() { return *controller_; }
  const ClusterOptions& options() const { return options_; }

  void start();
  void stop();
  // Blocks until the controller has no ready work. Pending backoff retries
  // do not count. False on timeout.
  bool settle(std::chrono::milliseconds timeout = std::chrono::seconds(30));

  // Polls until the Dataset reaches `phase`; returns it, or nullopt on timeout.
  std::optional<Dataset> wait_phase(const std::string& ns, const std::string& name, Phase phase,
                                    std::chrono::milliseconds timeout = std::chrono::seconds(10));

  // Creates or relabels the Namespace record.
  void label_namespace(const std::string& ns, const std::string& key, const std::string& value);

  // Admission followed by pod creation with the patch applied. Rejections
  // come back in the decision and create nothing.
  admission::AdmissionDecision create_pod(const Pod& pod, std::optional<Pod>* created = nullptr);

 private:
  ClusterOptions options_;
  Store store_;
  std::unique_ptr<s3::Prober> prober_;
  std::unique_ptr<Controller> controller_;
};

enum class ApplyResult { kCreated, kConfigured, kUnchanged };
std::string_view to_string(ApplyResult r);

// Create-or-update of a user manifest. Unchanged when the manifest's
// credential-resolved fingerprint matches the one the reconciler recorded
// (or, before the first reconcile, when the spec is identical).
// Throws StoreError(kInvalidObject) with field paths on validation failure.
ApplyResult apply_dataset(Store& store, Dataset ds);

// Cluster whose store is loaded from and saved back to a snapshot file.
class Session {
 public:
  Session(std::string path, ClusterOptions options);
  ~Session();

  Cluster& cluster() { return cluster_; }
  Store& store() { return cluster_.store(); }
  // Settles, stops the controller and writes the snapshot.
  void commit();

 private:
  std::string path_;
  Cluster cluster_;
  bool committed_ = false;
};

}  // namespace dlf::ctl
