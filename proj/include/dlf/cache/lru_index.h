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
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

namespace dlf::cache {

// Byte-budgeted LRU bookkeeping (no payloads). Not thread-safe.
class LruIndex {
 public:
  struct InsertResult {
    bool admitted = false;
    std::vector<std::string> evicted;  // least recent first
  };

  explicit LruIndex(std::uint64_t capacity_bytes) : capacity_(capacity_bytes) {}

  bool contains(const std::string& key) const { return pos_.contains(key); }
  // Marks key most recently used. False if absent.
  bool touch(const std::string& key);
  // Inserts (or resizes) key as most recent, evicting from the cold end until
  // it fits. An entry larger than the whole budget is not admitted.
  InsertResult insert(const std::string& key, std::uint64_t bytes);
  bool erase(const std::string& key);

  std::uint64_t used_bytes() const { return used_; }
  std::uint64_t capacity() const { return capacity_; }
  std::size_t size() const { return order_.size(); }
  // Most recent first.
  std::vector<std::string> keys() const;

 private:
  struct Entry {
    std::string key;
    std::uint64_t bytes;
  };

  std::uint64_t capacity_;
  std::uint64_t used_ = 0;
  std::list<Entry> order_;  // front = most recent
  std::unordered_map<std::string, std::list<Entry>::iterator> pos_;
};

}  // namespace dlf::cache
