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
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "dlf/cache/lru_index.h"
#include "dlf/s3/object_store.h"

namespace dlf::cache {

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;
  std::uint64_t bytes_served_from_cache = 0;
  std::uint64_t bytes_fetched_from_origin = 0;
  std::uint64_t origin_requests = 0;  // origin GETs issued by the gateway
  std::uint64_t cached_bytes = 0;

  bool operator==(const CacheStats&) const = default;
};

// Read-through whole-object cache in front of an origin bucket.
//   get: hit -> cache tier; miss -> origin, then admit (LRU by bytes)
//   put/remove: write through to origin, then invalidate the key
// Concurrent misses on one key share a single origin fetch; the callers
// that joined it are counted as hits. A fetch that raced with a write to the
// same key is returned to its readers but not admitted.
class CachingGateway : public s3::ObjectStore {
 public:
  // `tier` holds cached bytes; defaults to an in-memory store.
  CachingGateway(std::shared_ptr<s3::ObjectStore> origin, std::uint64_t capacity_bytes,
                 std::shared_ptr<s3::ObjectStore> tier = nullptr);

  std::string get(const std::string& key) override;
  void put(const std::string& key, const std::string& content) override;
  void remove(const std::string& key) override;
  std::vector<std::string> list(const std::string& prefix) override;
  std::string describe() const override;

  CacheStats stats() const;
  bool cached(const std::string& key) const;
  std::uint64_t capacity() const { return capacity_; }

 private:
  std::string fill(const std::string& key, std::unique_lock<std::mutex>& lock);
  void invalidate(const std::string& key);

  std::shared_ptr<s3::ObjectStore> origin_;
  std::shared_ptr<s3::ObjectStore> tier_;
  const std::uint64_t capacity_;

  mutable std::mutex mu_;
  LruIndex lru_;
  CacheStats stats_;
  std::map<std::string, std::uint64_t> generation_;
  std::map<std::string, std::shared_future<std::string>> inflight_;
};

}  // namespace dlf::cache
