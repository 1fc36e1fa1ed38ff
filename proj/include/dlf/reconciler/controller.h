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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "dlf/reconciler/reconciler.h"
#include "dlf/reconciler/work_queue.h"

namespace dlf {

struct ControllerOptions {
  int workers = 2;
  ReconcilerOptions reconciler;
  // How long watch threads block per poll; bounds shutdown latency.
  std::chrono::milliseconds poll{50};
  // Empty watches every namespace.
  std::string ns;
};

using OutcomeHook = std::function<void(const ObjectKey&, const ReconcileOutcome&)>;

// Runs the Dataset reconciler against a Store: one watch thread per watched
// kind feeds a deduplicating queue drained by N workers. Dependents
// (VolumeClaim, Secret) map back to their owning Dataset, so deleting one
// triggers its recreation.
class Controller {
 public:
  Controller(Store& store, s3::Prober& prober, ControllerOptions options = {});
  Controller(const Controller&) = delete;
  Controller& operator=(const Controller&) = delete;
  ~Controller();

  void start();
  // Stops watches, lets in-flight reconciles finish, joins all threads.
  void stop();

  // True once every store event has been delivered and the queue has no
  // ready or in-flight work. Pending backoff retries count as work unless
  // ignore_delayed is set.
  bool wait_idle(std::chrono::milliseconds timeout, bool ignore_delayed = true);

  void enqueue(const ObjectKey& key) { queue_.add(key); }
  void set_outcome_hook(OutcomeHook hook);

  std::uint64_t reconcile_count() const { return reconciles_.load(); }
  std::uint64_t resyncs() const { return resyncs_.load(); }
  Reconciler& reconciler() { return reconciler_; }
  WorkQueue& queue() { return queue_; }

 private:
  struct Feed {
    Kind kind;
    std::atomic<std::int64_t> delivered{0};
  };

  void watch_loop(Feed& feed, std::int64_t from);
  void worker_loop();
  std::int64_t resync();
  void dispatch(const StoredObject& obj);

  Store& store_;
  ControllerOptions options_;
  Reconciler reconciler_;
  WorkQueue queue_;
  std::vector<std::unique_ptr<Feed>> feeds_;
  std::vector<std::thread> threads_;
  std::atomic<bool> running_{false};
  std::atomic<std::uint64_t> reconciles_{0};
  std::atomic<std::uint64_t> resyncs_{0};
  std::mutex hook_mu_;
  OutcomeHook hook_;
};

}  // namespace dlf
