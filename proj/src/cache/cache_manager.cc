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

#include "dlf/cache/cache_manager.h"

#include <stdexcept>

namespace dlf::cache {

CacheManager::CacheManager(CachePolicyConfig config, Store* store, std::string ns)
    : window_(config), store_(store), ns_(std::move(ns)) {}

EffectiveEndpoint CacheManager::attach_gateway(const std::string& dataset_id,
                                               std::shared_ptr<s3::ObjectStore> origin, TimePoint now,
                                               std::shared_ptr<s3::ObjectStore> tier) {
  if (auto existing = gateway(dataset_id)) return {dataset_id, true, existing->describe()};
  if (!should_cache(dataset_id, now)) {
    throw std::logic_error("dataset " + dataset_id + " is not frequently accessed");
  }
  std::shared_ptr<CachingGateway> gw;
  bool fresh = false;
  {
    std::lock_guard lock(mu_);
    auto& slot = gateways_[dataset_id];
    if (!slot) {
      slot = std::make_shared<CachingGateway>(std::move(origin), config().capacity_bytes, std::move(tier));
      fresh = true;
    }
    gw = slot;
  }
  if (fresh) mark_cached(dataset_id);
  return {dataset_id, true, gw->describe()};
}

std::shared_ptr<s3::ObjectStore> CacheManager::route(const std::string& dataset_id,
                                                     std::shared_ptr<s3::ObjectStore> origin,
                                                     TimePoint now, std::uint64_t bytes) {
  record_access({dataset_id, now, bytes, AccessOp::kRead});
  if (auto gw = gateway(dataset_id)) return gw;
  if (should_cache(dataset_id, now)) {
    attach_gateway(dataset_id, origin, now);
    return gateway(dataset_id);
  }
  return origin;
}

std::shared_ptr<CachingGateway> CacheManager::gateway(const std::string& dataset_id) const {
  std::lock_guard lock(mu_);
  auto it = gateways_.find(dataset_id);
  return it == gateways_.end() ? nullptr : it->second;
}

EffectiveEndpoint CacheManager::effective_endpoint(const std::string& dataset_id,
                                                   const s3::ObjectStore& origin) const {
  if (auto gw = gateway(dataset_id)) return {dataset_id, true, gw->describe()};
  return {dataset_id, false, origin.describe()};
}

void CacheManager::mark_cached(const std::string& dataset_id) {
  if (!store_) return;
  for (int attempt = 0; attempt < 5; ++attempt) {
    auto obj = store_->get(Kind::kDataset, ns_, dataset_id);
    if (!obj) return;
    auto& payload = obj->as<DatasetPayload>();
    if (payload.status.cached) return;
    payload.status.cached = true;
    try {
      store_->update(*obj, obj->meta.resource_version);
      return;
    } catch (const StoreError& e) {
      if (e.code() != StoreErrc::kConflict) return;
    }
  }
}

}  // namespace dlf::cache
