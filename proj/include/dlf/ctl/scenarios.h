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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dlf/ctl/pipeline_sim.h"
#include "dlf/ctl/report.h"

namespace dlf::ctl {

inline constexpr std::string_view kDownloaderUserAgent = "notebook-downloader";
inline constexpr std::string_view kSidecarUserAgent = "g1k-sidecar";
inline constexpr std::string_view kUploaderUserAgent = "g1k-uploader";

inline constexpr int kNotebookDefaultObjects = 50;
inline constexpr int kTensorboardDefaultObjects = 5;
inline constexpr int kG1kDefaultChunks = 8;

struct ScenarioOptions {
  int scale = 0;  // 0 -> the scenario's default
  std::uint64_t seed = 1;
  int workers = 2;
  ContentionModel contention;
};

// Each scenario provisions its own stub buckets and in-process cluster and
// tears them down before returning. Exceptions become failed steps.

// Path A downloads N objects with explicit GETs; path B mounts the same
// bucket as a dataset and reads through the emulated driver.
// Counters: objects, downloadCallsA, downloadCallsB, driverReads, podsMutated.
ScenarioReport run_notebook(const ScenarioOptions& options);

// A one-replica workload labeled with the `uses` alias; metadata written
// through the mount must survive deleting and re-admitting the pod.
ScenarioReport run_tensorboard(const ScenarioOptions& options);

// One pipeline mode over K chunks: real data movement against stub buckets
// plus the discrete-event timing model.
// Counters: chunks, steps, alignSteps, sidecarSteps, uploaderSteps,
// sharedStagingWrites, outputObjects, and wire counts from the stub log.
ScenarioReport run_g1k_mode(PipelineMode mode, const ScenarioOptions& options);

// Both modes; counters prefixed "before." / "after.", simulated duration of
// the after mode, plus a step comparing the two.
ScenarioReport run_g1k(const ScenarioOptions& options);

std::optional<ScenarioReport> run_scenario(std::string_view name, const ScenarioOptions& options);

}  // namespace dlf::ctl
