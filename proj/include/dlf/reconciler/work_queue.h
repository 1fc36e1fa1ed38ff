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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>

#include "dlf/store/object.h"

namespace dlf {

struct BackoffPolicy {
  std::chrono::milliseconds base{50};
  double factor = 2.0;
  std::chrono::milliseconds cap{5000};
};

// Per-key exponential failure backoff: base * factor^failures, capped.
class Backoff {
 public:
  explicit Backoff(BackoffPolicy policy = {}) : policy_(policy) {}

  // Delay for the next retry of key; advances its failure count.
  std::chrono::milliseconds next(const ObjectKey& key);
  void forget(const ObjectKey& key);
  int failures(const ObjectKey& key) const;

 private:
  BackoffPolicy policy_;
  mutable std::mutex mu_;
  std::map<ObjectKey, int> failures_;
};

// Deduplicating work queue. A key is in at most one of {queued, processing}
// at a time from a worker's point of view: adding a key that is queued is a
// no-op, adding one that is being processed marks it dirty so it is queued
// once when done() is called.
class WorkQueue {
 public:
  using Clock = std::chrono::steady_clock;

  void add(const ObjectKey& key);
  void add_after(const ObjectKey& key, std::chrono::milliseconds delay);

  // Blocks up to `timeout` for a ready key. nullopt on timeout or shutdown.
  std::optional<ObjectKey> get(std::chrono::milliseconds timeout);
  void done(const ObjectKey& key);

  void shut_down();
  bool shutting_down() const;

  std::size_t queued() const;
  std::size_t processing() const;
  std::size_t delayed() const;
  // No queued or processing keys (delayed retries are not counted).
  bool idle() const;

 private:
  void promote_due_locked(Clock::time_point now);

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<ObjectKey> queue_;
  std::set<ObjectKey> dirty_;
  std::set<ObjectKey> processing_;
  std::multimap<Clock::time_point, ObjectKey> waiting_;
  bool shutdown_ = false;
};

}  // namespace dlf
