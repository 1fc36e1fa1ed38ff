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

#include "dlf/reconciler/work_queue.h"

#include <algorithm>
#include <cmath>

namespace dlf {

std::chrono::milliseconds Backoff::next(const ObjectKey& key) {
  std::lock_guard lock(mu_);
  const int n = failures_[key]++;
  const double ms = static_cast<double>(policy_.base.count()) * std::pow(policy_.factor, n);
  const double capped = std::min(ms, static_cast<double>(policy_.cap.count()));
  return std::chrono::milliseconds(static_cast<std::int64_t>(capped));
}

void Backoff::forget(const ObjectKey& key) {
  std::lock_guard lock(mu_);
  failures_.erase(key);
}

int Backoff::failures(const ObjectKey& key) const {
  std::lock_guard lock(mu_);
  auto it = failures_.find(key);
  return it == failures_.end() ? 0 : it->second;
}

void WorkQueue::add(const ObjectKey& key) {
  std::lock_guard lock(mu_);
  if (shutdown_ || dirty_.contains(key)) return;
  dirty_.insert(key);
  if (processing_.contains(key)) return;
  queue_.push_back(key);
  cv_.notify_one();
}

void WorkQueue::add_after(const ObjectKey& key, std::chrono::milliseconds delay) {
  if (delay.count() <= 0) {
    add(key);
    return;
  }
  std::lock_guard lock(mu_);
  if (shutdown_) return;
  waiting_.emplace(Clock::now() + delay, key);
  cv_.notify_all();
}

void WorkQueue::promote_due_locked(Clock::time_point now) {
  while (!waiting_.empty() && waiting_.begin()->first <= now) {
    ObjectKey key = waiting_.begin()->second;
    waiting_.erase(waiting_.begin());
    if (dirty_.contains(key)) continue;
    dirty_.insert(key);
    if (!processing_.contains(key)) queue_.push_back(key);
  }
}

std::optional<ObjectKey> WorkQueue::get(std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  std::unique_lock lock(mu_);
  for (;;) {
    if (shutdown_) return std::nullopt;
    const auto now = Clock::now();
    promote_due_locked(now);
    if (!queue_.empty()) {
      ObjectKey key = queue_.front();
      queue_.pop_front();
      dirty_.erase(key);
      processing_.insert(key);
      return key;
    }
    if (now >= deadline) return std::nullopt;
    auto wake = deadline;
    if (!waiting_.empty()) wake = std::min(wake, waiting_.begin()->first);
    cv_.wait_until(lock, wake);
  }
}

void WorkQueue::done(const ObjectKey& key) {
  std::lock_guard lock(mu_);
  processing_.erase(key);
  if (dirty_.contains(key) && !shutdown_) {
    queue_.push_back(key);
    cv_.notify_one();
  }
}

void WorkQueue::shut_down() {
  {
    std::lock_guard lock(mu_);
    shutdown_ = true;
  }
  cv_.notify_all();
}

bool WorkQueue::shutting_down() const {
  std::lock_guard lock(mu_);
  return shutdown_;
}

std::size_t WorkQueue::queued() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

std::size_t WorkQueue::processing() const {
  std::lock_guard lock(mu_);
  return processing_.size();
}

std::size_t WorkQueue::delayed() const {
  std::lock_guard lock(mu_);
  return waiting_.size();
}

bool WorkQueue::idle() const {
  std::lock_guard lock(mu_);
  return queue_.empty() && processing_.empty();
}

}  // namespace dlf
