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
#include <string>

#include "dlf/model/dataset.h"

namespace dlf {

// Canonical form: the spec's (field, value) pairs sorted by field name, each
// written as `field '\0' value '\0'`. Optional fields appear only when set.
// Credentials are included so that a rotated key changes the digest.
std::string canonical_spec(const DatasetSpec& spec);

// 64-bit FNV-1a over canonical_spec.
std::uint64_t spec_fingerprint(const DatasetSpec& spec);

// Fixed-width lowercase hex, used for the fingerprint annotation.
std::string fingerprint_hex(std::uint64_t digest);

}  // namespace dlf
