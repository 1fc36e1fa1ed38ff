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
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>

namespace dlf::cache {

using Clock = std::chrono::steady_clock;
using TimePoint = Clock::time_point;

enum class AccessOp { kRead, kWrite };

struct AccessRecord {
  std::string dataset_id;
  TimePoint timestamp;
  std::uint64_t bytes = 0;
  AccessOp op = AccessOp::kRead;
};

enum class EvictionOrder { kLeastRecentlyUsed };

struct CachePolicyConfig {
  std::chrono::nanoseconds window = std::chrono::seconds(60);
  std::uint32_t threshold = 3;
  std::uint64_t capacity_bytes = 64ull << 20;
  EvictionOrder eviction = EvictionOrder::kLeastRecentlyUsed;

  // Throws std::invalid_argument unless threshold >= 1, capacity > 0 and
  // the window is positive.
  void validate() const;
};

// Sliding-window access counter. The window at time t is (t - window, t].
// Both reads and writes count as accesses.
class AccessWindow {
 public:
  explicit AccessWindow(CachePolicyConfig config = {});

  // Appends the record and drops records of the same dataset that fell out
  // of the window ending at rec.timestamp.
  void record(const AccessRecord& rec);
  std::size_t count(const std::string& dataset_id, TimePoint now) const;
  bool should_cache(const std::string& dataset_id, TimePoint now) const;

  const CachePolicyConfig& config() const { return config_; }

 private:
  CachePolicyConfig config_;
  mutable std::mutex mu_;
  std::map<std::string, std::deque<TimePoint>> events_;
};

}  // namespace dlf::cache
