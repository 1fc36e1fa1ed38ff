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

#include "dlf/reconciler/controller.h"

#include <algorithm>
#include <iostream>
#include <memory>

namespace dlf {

Controller::Controller(Store& store, s3::Prober& prober, ControllerOptions options)
    : store_(store), options_(std::move(options)), reconciler_(store, prober, options_.reconciler) {}

Controller::~Controller() { stop(); }

void Controller::set_outcome_hook(OutcomeHook hook) {
  std::lock_guard lock(hook_mu_);
  hook_ = std::move(hook);
}

void Controller::dispatch(const StoredObject& obj) {
  if (obj.kind == Kind::kDataset) {
    queue_.add({obj.meta.ns, obj.meta.name});
    return;
  }
  for (const auto& ref : obj.meta.owner_refs) {
    if (ref.kind == "Dataset") queue_.add({obj.meta.ns, ref.name});
  }
}

std::int64_t Controller::resync() {
  ListResult listing = store_.list_at(Kind::kDataset, options_.ns);
  for (const auto& obj : listing.items) dispatch(obj);
  return listing.sequence;
}

void Controller::start() {
  if (running_.exchange(true)) return;
  const std::int64_t from = resync();
  for (Kind kind : {Kind::kDataset, Kind::kVolumeClaim, Kind::kSecret}) {
    auto feed = std::make_unique<Feed>();
    feed->kind = kind;
    feed->delivered = from;
    feeds_.push_back(std::move(feed));
  }
  for (auto& feed : feeds_) {
    threads_.emplace_back([this, f = feed.get(), from] { watch_loop(*f, from); });
  }
  for (int i = 0; i < std::max(1, options_.workers); ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

void Controller::stop() {
  if (!running_.exchange(false)) return;
  queue_.shut_down();
  for (auto& t : threads_) t.join();
  threads_.clear();
  feeds_.clear();
}

void Controller::watch_loop(Feed& feed, std::int64_t from) {
  std::optional<Watch> watch;
  while (running_) {
    try {
      if (!watch) watch.emplace(store_.watch(feed.kind, options_.ns, from));
      auto ev = watch->next(options_.poll);
      if (ev) dispatch(ev->object);
      feed.delivered = watch->cursor();
    } catch (const StoreError& e) {
      if (e.code() != StoreErrc::kSequenceExpired) throw;
      // Fell behind the retained history: relist and start over from there.
      ++resyncs_;
      watch.reset();
      from = resync();
      feed.delivered = from;
    }
  }
}

void Controller::worker_loop() {
  while (!queue_.shutting_down()) {
    auto key = queue_.get(options_.poll);
    if (!key) continue;
    ReconcileOutcome outcome;
    try {
      outcome = reconciler_.reconcile(*key);
    } catch (const std::exception& e) {
      outcome.action = ReconcileOutcome::Action::kRequeueAfter;
      outcome.reason = e.what();
      outcome.requeue_after = reconciler_.backoff().next(*key);
    }
    ++reconciles_;
    {
      std::lock_guard lock(hook_mu_);
      if (hook_) hook_(*key, outcome);
    }
    queue_.done(*key);
    if (outcome.requeue()) queue_.add_after(*key, outcome.requeue_after);
  }
}

bool Controller::wait_idle(std::chrono::milliseconds timeout, bool ignore_delayed) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    const std::int64_t seq = store_.sequence();
    bool caught_up = true;
    for (const auto& feed : feeds_) caught_up = caught_up && feed->delivered >= seq;
    const bool quiet = queue_.idle() && (ignore_delayed || queue_.delayed() == 0);
    // A worker may have written between the first read and the queue check.
    if (caught_up && quiet && store_.sequence() == seq) return true;
    if (std::chrono::steady_clock::now() >= deadline) return false;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
}

}  // namespace dlf
