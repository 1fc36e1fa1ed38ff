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

#include <string>
#include <string_view>
#include <vector>

#include "dlf/store/store.h"

namespace dlf {

// Multi-document form of every stored object (full metadata, payload, and
// Dataset status), used for session files and scenario fixtures. Datasets use
// the same `spec.local` layout as user manifests.
std::string encode_object(const StoredObject& obj);
std::string dump_snapshot(const std::vector<StoredObject>& objects);

// Strict inverse of dump_snapshot. Throws ManifestError.
std::vector<StoredObject> load_snapshot(std::string_view text);

void save_store(const Store& store, const std::string& path);
// Missing file -> no-op.
void load_store(Store& store, const std::string& path);

}  // namespace dlf
