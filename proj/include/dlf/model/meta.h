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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dlf {

using Labels = std::map<std::string, std::string>;

struct OwnerRef {
  std::string kind;
  std::string name;
  std::string uid;

  bool operator==(const OwnerRef&) const = default;
};

struct ObjectMeta {
  std::string name;
  std::string ns;
  std::string uid;
  std::int64_t resource_version = 0;
  Labels labels;
  Labels annotations;
  std::vector<OwnerRef> owner_refs;
  std::vector<std::string> finalizers;
  bool deletion_requested = false;

  bool operator==(const ObjectMeta&) const = default;

  bool has_finalizer(std::string_view f) const;
  bool owned_by(std::string_view uid) const;
};

// [a-z0-9]([-a-z0-9]*[a-z0-9])?, 1..63 chars.
bool is_dns_label(std::string_view s);

// True iff every selector pair is present in labels.
bool matches_selector(const Labels& labels, const Labels& selector);

}  // namespace dlf
