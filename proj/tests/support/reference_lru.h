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

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dlf/cache/lru_index.h"

namespace dlf::testing {

// Independent LRU: a plain vector, most recent at the back, linear scans.
class ReferenceLru {
 public:
  explicit ReferenceLru(std::uint64_t cap) : cap_(cap) {}
  bool touch(const std::string& k) {
    auto it = find(k);
    if (it == items_.end()) return false;
    auto item = *it;
    items_.erase(it);
    items_.push_back(item);
    return true;
  }
  cache::LruIndex::InsertResult insert(const std::string& k, std::uint64_t bytes) {
    cache::LruIndex::InsertResult r;
    if (auto it = find(k); it != items_.end()) items_.erase(it);
    if (bytes > cap_) return r;
    while (used() + bytes > cap_) {
      r.evicted.push_back(items_.front().first);
      items_.erase(items_.begin());
    }
    items_.emplace_back(k, bytes);
    r.admitted = true;
    return r;
  }
  bool erase(const std::string& k) {
    auto it = find(k);
    if (it == items_.end()) return false;
    items_.erase(it);
    return true;
  }
  std::uint64_t used() const {
    std::uint64_t u = 0;
    for (const auto& [k, b] : items_) u += b;
    return u;
  }
  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (auto it = items_.rbegin(); it != items_.rend(); ++it) out.push_back(it->first);
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::uint64_t>>::iterator find(const std::string& k) {
    return std::find_if(items_.begin(), items_.end(), [&](const auto& p) { return p.first == k; });
  }
  std::uint64_t cap_;
  std::vector<std::pair<std::string, std::uint64_t>> items_;
};

}  // namespace dlf::testing
