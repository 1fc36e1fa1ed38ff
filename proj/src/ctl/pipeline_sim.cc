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

#include "dlf/ctl/pipeline_sim.h"

#include <algorithm>
#include <deque>
#include <queue>
#include <random>
#include <stdexcept>

namespace dlf::ctl {

std::string_view to_string(PipelineMode m) { return m == PipelineMode::kStaged ? "before" : "after"; }

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::kSidecarFetch: return "sidecar-fetch";
    case StepKind::kAlign: return "align";
    case StepKind::kStagingWrite: return "staging-write";
    case StepKind::kUpload: return "upload";
    case StepKind::kDirectWrite: return "direct-write";
  }
  return "?";
}

std::int64_t SimResult::count(StepKind k) const {
  return std::count_if(steps.begin(), steps.end(), [k](const SimStep& s) { return s.kind == k; });
}

namespace {

struct Event {
  double time;
  std::uint64_t seq;  // FIFO among simultaneous events
  StepKind done;
  int chunk;
  double start;

  bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
};

class Sim {
 public:
  Sim(PipelineMode mode, int chunks, const ContentionModel& m, std::uint64_t seed)
      : mode_(mode), chunks_(chunks), m_(m) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-m.compute_jitter, m.compute_jitter);
    for (int i = 0; i < chunks; ++i) compute_.push_back(m.compute_s * (1.0 + u(rng)));
  }

  SimResult run() {
    for (int i = 0; i < chunks_; ++i) {
      if (mode_ == PipelineMode::kStaged) {
        schedule(StepKind::kSidecarFetch, i, 0.0, m_.fetch_s);
      } else {
        // The worker reads its input through the mount as part of the step.
        schedule(StepKind::kAlign, i, 0.0, m_.fetch_s + compute_[i]);
      }
    }
    while (!events_.empty()) {
      Event ev = events_.top();
      events_.pop();
      now_ = ev.time;
      out_.steps.push_back({ev.done, ev.chunk, ev.start, ev.time});
      on_done(ev);
    }
    out_.makespan = now_;
    return std::move(out_);
  }

 private:
  void schedule(StepKind kind, int chunk, double start, double duration) {
    events_.push({start + duration, seq_++, kind, chunk, start});
  }

  void on_done(const Event& ev) {
    switch (ev.done) {
      case StepKind::kSidecarFetch:
        schedule(StepKind::kAlign, ev.chunk, now_, compute_[ev.chunk]);
        break;
      case StepKind::kAlign:
        if (mode_ == PipelineMode::kDirect) {
          schedule(StepKind::kDirectWrite, ev.chunk, now_, m_.write_s);
        } else {
          staging_queue_.push_back(ev.chunk);
          start_staging_write();
        }
        break;
      case StepKind::kStagingWrite:
        volume_busy_ = false;
        if (++staged_ == chunks_) start_upload();
        start_staging_write();
        break;
      case StepKind::kUpload:
        start_upload();
        break;
      case StepKind::kDirectWrite:
        break;
    }
  }

  void start_staging_write() {
    if (volume_busy_ || staging_queue_.empty()) return;
    const int chunk = staging_queue_.front();
    staging_queue_.pop_front();
    volume_busy_ = true;
    const double penalty = m_.contention_penalty_s * static_cast<double>(staging_queue_.size());
    schedule(StepKind::kStagingWrite, chunk, now_, m_.write_s + penalty);
  }

  // The uploader drains the staging volume one object at a time.
  void start_upload() {
    if (uploaded_ == chunks_) return;
    schedule(StepKind::kUpload, uploaded_++, now_, m_.upload_s);
  }

  PipelineMode mode_;
  int chunks_;
  ContentionModel m_;
  std::vector<double> compute_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t seq_ = 0;
  double now_ = 0.0;
  std::deque<int> staging_queue_;
  bool volume_busy_ = false;
  int staged_ = 0;
  int uploaded_ = 0;
  SimResult out_;
};

}  // namespace

SimResult simulate_pipeline(PipelineMode mode, int chunks, const ContentionModel& model,
                            std::uint64_t seed) {
  if (chunks < 1) throw std::invalid_argument("pipeline needs at least one chunk");
  return Sim(mode, chunks, model, seed).run();
}

}  // namespace dlf::ctl
