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

#include "dlf/s3/object_store.h"

namespace dlf::s3 {

std::string MemoryObjectStore::get(const std::string& key) {
  std::lock_guard lock(mu_);
  auto it = objects_.find(key);
  if (it == objects_.end()) throw S3Error(S3Errc::kNoSuchKey, "NoSuchKey: " + key, 404);
  return it->second;
}

void MemoryObjectStore::put(const std::string& key, const std::string& content) {
  std::lock_guard lock(mu_);
  objects_[key] = content;
}

void MemoryObjectStore::remove(const std::string& key) {
  std::lock_guard lock(mu_);
  objects_.erase(key);
}

std::vector<std::string> MemoryObjectStore::list(const std::string& prefix) {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (auto it = objects_.lower_bound(prefix); it != objects_.end() && it->first.starts_with(prefix); ++it) {
    out.push_back(it->first);
  }
  return out;
}

}  // namespace dlf::s3
