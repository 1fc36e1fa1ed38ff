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

#include "dlf/cache/lru_index.h"

namespace dlf::cache {

bool LruIndex::touch(const std::string& key) {
  auto it = pos_.find(key);
  if (it == pos_.end()) return false;
  order_.splice(order_.begin(), order_, it->second);
  return true;
}

LruIndex::InsertResult LruIndex::insert(const std::string& key, std::uint64_t bytes) {
  InsertResult out;
  erase(key);
  if (bytes > capacity_) return out;
  while (used_ + bytes > capacity_) {
    const Entry& cold = order_.back();
    out.evicted.push_back(cold.key);
    used_ -= cold.bytes;
    pos_.erase(cold.key);
    order_.pop_back();
  }
  order_.push_front({key, bytes});
  pos_[key] = order_.begin();
  used_ += bytes;
  out.admitted = true;
  return out;
}

bool LruIndex::erase(const std::string& key) {
  auto it = pos_.find(key);
  if (it == pos_.end()) return false;
  used_ -= it->second->bytes;
  order_.erase(it->second);
  pos_.erase(it);
  return true;
}

std::vector<std::string> LruIndex::keys() const {
  std::vector<std::string> out;
  out.reserve(order_.size());
  for (const auto& e : order_) out.push_back(e.key);
  return out;
}

}  // namespace dlf::cache
