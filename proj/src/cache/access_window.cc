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

#include "dlf/cache/access_window.h"

#include <algorithm>
#include <stdexcept>

namespace dlf::cache {

void CachePolicyConfig::validate() const {
  if (threshold < 1) throw std::invalid_argument("cache threshold must be >= 1");
  if (capacity_bytes == 0) throw std::invalid_argument("cache capacity must be > 0");
  if (window.count() <= 0) throw std::invalid_argument("cache window must be positive");
}

AccessWindow::AccessWindow(CachePolicyConfig config) : config_(config) { config_.validate(); }

void AccessWindow::record(const AccessRecord& rec) {
  std::lock_guard lock(mu_);
  auto& q = events_[rec.dataset_id];
  // Streams are expected non-decreasing; tolerate stragglers by keeping order.
  q.insert(std::upper_bound(q.begin(), q.end(), rec.timestamp), rec.timestamp);
  const TimePoint horizon = q.back() - config_.window;
  while (!q.empty() && q.front() <= horizon) q.pop_front();
}

std::size_t AccessWindow::count(const std::string& dataset_id, TimePoint now) const {
  std::lock_guard lock(mu_);
  auto it = events_.find(dataset_id);
  if (it == events_.end()) return 0;
  const auto& q = it->second;
  auto lo = std::upper_bound(q.begin(), q.end(), now - config_.window);
  auto hi = std::upper_bound(q.begin(), q.end(), now);
  return lo < hi ? static_cast<std::size_t>(hi - lo) : 0;
}

bool AccessWindow::should_cache(const std::string& dataset_id, TimePoint now) const {
  return count(dataset_id, now) >= config_.threshold;
}

}  // namespace dlf::cache
