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

#include "dlf/cache/gateway.h"

namespace dlf::cache {

CachingGateway::CachingGateway(std::shared_ptr<s3::ObjectStore> origin, std::uint64_t capacity_bytes,
                               std::shared_ptr<s3::ObjectStore> tier)
    : origin_(std::move(origin)),
      tier_(tier ? std::move(tier) : std::make_shared<s3::MemoryObjectStore>("cache")),
      capacity_(capacity_bytes),
      lru_(capacity_bytes) {}

std::string CachingGateway::get(const std::string& key) {
  std::unique_lock lock(mu_);
  if (lru_.touch(key)) {
    ++stats_.hits;
    lock.unlock();
    try {
      std::string data = tier_->get(key);
      lock.lock();
      stats_.bytes_served_from_cache += data.size();
      return data;
    } catch (const s3::S3Error& e) {
      if (e.code() != s3::S3Errc::kNoSuchKey) throw;
      // Evicted between the index check and the read.
      lock.lock();
      --stats_.hits;
    }
  }
  if (auto it = inflight_.find(key); it != inflight_.end()) {
    auto pending = it->second;
    ++stats_.hits;
    lock.unlock();
    std::string data = pending.get();
    lock.lock();
    stats_.bytes_served_from_cache += data.size();
    return data;
  }
  ++stats_.misses;
  return fill(key, lock);
}

std::string CachingGateway::fill(const std::string& key, std::unique_lock<std::mutex>& lock) {
  std::promise<std::string> promise;
  inflight_.emplace(key, promise.get_future().share());
  const std::uint64_t gen = generation_[key];
  lock.unlock();

  std::string data;
  try {
    data = origin_->get(key);
  } catch (...) {
    lock.lock();
    ++stats_.origin_requests;
    inflight_.erase(key);
    promise.set_exception(std::current_exception());
    throw;
  }

  lock.lock();
  ++stats_.origin_requests;
  stats_.bytes_fetched_from_origin += data.size();
  inflight_.erase(key);
  if (generation_[key] == gen) {
    auto result = lru_.insert(key, data.size());
    for (const auto& victim : result.evicted) {
      ++stats_.evictions;
      tier_->remove(victim);
    }
    if (result.admitted) tier_->put(key, data);
  }
  promise.set_value(data);
  return data;
}

void CachingGateway::invalidate(const std::string& key) {
  std::lock_guard lock(mu_);
  ++generation_[key];
  if (lru_.erase(key)) tier_->remove(key);
}

void CachingGateway::put(const std::string& key, const std::string& content) {
  origin_->put(key, content);
  invalidate(key);
}

void CachingGateway::remove(const std::string& key) {
  origin_->remove(key);
  invalidate(key);
}

std::vector<std::string> CachingGateway::list(const std::string& prefix) { return origin_->list(prefix); }

std::string CachingGateway::describe() const { return "cache+" + origin_->describe(); }

CacheStats CachingGateway::stats() const {
  std::lock_guard lock(mu_);
  CacheStats out = stats_;
  out.cached_bytes = lru_.used_bytes();
  return out;
}

bool CachingGateway::cached(const std::string& key) const {
  std::lock_guard lock(mu_);
  return lru_.contains(key);
}

}  // namespace dlf::cache
