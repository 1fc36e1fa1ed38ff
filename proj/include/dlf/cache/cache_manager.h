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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "dlf/cache/access_window.h"
#include "dlf/cache/gateway.h"
#include "dlf/store/store.h"

namespace dlf::cache {

// Where reads of a dataset currently go.
struct EffectiveEndpoint {
  std::string dataset_id;
  bool cached = false;
  std::string locator;  // ObjectStore::describe() of the effective store
};

// Frequency-driven cache admission per dataset. Consumers always read
// through route(); once a dataset crosses the access threshold, route()
// starts returning a CachingGateway in place of the origin.
class CacheManager {
 public:
  // With a store, attaching a gateway also sets status.cached on the
  // Dataset <ns>/<id> (best effort).
  explicit CacheManager(CachePolicyConfig config = {}, Store* store = nullptr, std::string ns = "default");

  void record_access(const AccessRecord& rec) { window_.record(rec); }
  bool should_cache(const std::string& dataset_id, TimePoint now) const {
    return window_.should_cache(dataset_id, now);
  }

  // Requires should_cache(dataset_id, now); throws std::logic_error otherwise.
  // Idempotent: a dataset keeps its first gateway.
  EffectiveEndpoint attach_gateway(const std::string& dataset_id, std::shared_ptr<s3::ObjectStore> origin,
                                   TimePoint now, std::shared_ptr<s3::ObjectStore> tier = nullptr);

  // Records a read and returns the store to serve it from.
  std::shared_ptr<s3::ObjectStore> route(const std::string& dataset_id,
                                         std::shared_ptr<s3::ObjectStore> origin, TimePoint now,
                                         std::uint64_t bytes = 0);

  std::shared_ptr<CachingGateway> gateway(const std::string& dataset_id) const;
  EffectiveEndpoint effective_endpoint(const std::string& dataset_id,
                                       const s3::ObjectStore& origin) const;
  const CachePolicyConfig& config() const { return window_.config(); }

 private:
  void mark_cached(const std::string& dataset_id);

  AccessWindow window_;
  Store* store_;
  std::string ns_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<CachingGateway>> gateways_;
};

}  // namespace dlf::cache
