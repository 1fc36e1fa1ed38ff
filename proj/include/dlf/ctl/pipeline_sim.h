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
#include <string_view>
#include <vector>

namespace dlf::ctl {

// Staged: workers get inputs from a sidecar, write results to a shared
// ReadWriteMany staging volume, and a separate uploader copies them to the
// output bucket. Direct: inputs and outputs are datasets mounted straight
// into the workers.
enum class PipelineMode { kStaged, kDirect };
std::string_view to_string(PipelineMode m);

// All times in simulated seconds. Writes to the shared staging volume are
// serialized (one at a time, FIFO) and each costs
//   write_s + contention_penalty_s * (writers still queued when it starts).
struct ContentionModel {
  double fetch_s = 0.5;
  double compute_s = 2.0;
  double compute_jitter = 0.2;  // compute time drawn from compute_s * (1 +/- jitter)
  double write_s = 0.4;
  double contention_penalty_s = 0.25;
  double upload_s = 0.3;
};

enum class StepKind { kSidecarFetch, kAlign, kStagingWrite, kUpload, kDirectWrite };
std::string_view to_string(StepKind k);

struct SimStep {
  StepKind kind;
  int chunk;
  double start;
  double end;
};

struct SimResult {
  std::vector<SimStep> steps;  // in completion order
  double makespan = 0.0;

  std::int64_t count(StepKind k) const;
};

// Discrete-event run of one scatter pipeline over `chunks` inputs, one
// worker per chunk. Deterministic for a given seed; both modes draw the same
// per-chunk compute times.
SimResult simulate_pipeline(PipelineMode mode, int chunks, const ContentionModel& model,
                            std::uint64_t seed);

}  // namespace dlf::ctl
