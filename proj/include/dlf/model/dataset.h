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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlf/model/meta.h"

namespace dlf {

enum class DatasetType { kCos, kNfs, kArchive };
enum class ArchiveFormat { kRaw, kTar, kTarGz };

std::string_view to_string(DatasetType t);
std::optional<DatasetType> parse_dataset_type(std::string_view s);
std::string_view to_string(ArchiveFormat f);
std::optional<ArchiveFormat> parse_archive_format(std::string_view s);

// S3-compatible bucket. secret_ref names the Secret that holds the key pair
// once the operator has scrubbed secret_access_key from the stored spec.
struct CosSource {
  std::string endpoint;
  std::string bucket;
  std::string access_key_id;
  std::string secret_access_key;
  std::optional<std::string> region;
  std::optional<std::string> secret_ref;

  bool operator==(const CosSource&) const = default;
};

struct NfsSource {
  std::string server;
  std::string share;

  bool operator==(const NfsSource&) const = default;
};

struct ArchiveSource {
  std::string url;
  ArchiveFormat format = ArchiveFormat::kRaw;

  bool operator==(const ArchiveSource&) const = default;
};

struct DatasetSpec {
  std::variant<CosSource, NfsSource, ArchiveSource> source;

  DatasetType type() const { return static_cast<DatasetType>(source.index()); }
  const CosSource* cos() const { return std::get_if<CosSource>(&source); }
  CosSource* cos() { return std::get_if<CosSource>(&source); }
  const NfsSource* nfs() const { return std::get_if<NfsSource>(&source); }
  const ArchiveSource* archive() const { return std::get_if<ArchiveSource>(&source); }

  bool operator==(const DatasetSpec&) const = default;
};

enum class Phase { kPending, kProvisioning, kReady, kFailed, kTerminating };

std::string_view to_string(Phase p);
std::optional<Phase> parse_phase(std::string_view s);

// Exact edge set of the phase machine; self-loops are not edges.
bool can_transition(Phase from, Phase to);

struct ProbeSummary {
  bool reachable = false;
  bool authorized = false;
  bool bucket_exists = false;
  std::string detail;
  std::int64_t timestamp_ms = 0;

  bool operator==(const ProbeSummary&) const = default;
};

struct DatasetStatus {
  Phase phase = Phase::kPending;
  std::string message;
  std::optional<std::string> bound_claim;
  std::optional<std::string> bound_secret;
  bool cached = false;
  std::optional<ProbeSummary> last_probe;

  bool operator==(const DatasetStatus&) const = default;
};

struct Dataset {
  ObjectMeta meta;
  DatasetSpec spec;
  DatasetStatus status;

  bool operator==(const Dataset&) const = default;
};

struct FieldError {
  std::string field;
  std::string reason;

  std::string to_string() const { return field + ": " + reason; }
  bool operator==(const FieldError&) const = default;
};

struct ValidationResult {
  std::vector<FieldError> errors;

  bool ok() const { return errors.empty(); }
};

ValidationResult validate_dataset(const DatasetSpec& spec);

// Published S3 bucket naming rules (general purpose buckets).
bool is_valid_bucket_name(std::string_view name);

struct ParsedUrl {
  std::string scheme;
  std::string host;
  std::uint16_t port = 0;
  std::string path;  // includes query, "/" when empty
};

// Absolute http/https URL with a host; port defaults from the scheme.
std::optional<ParsedUrl> parse_url(std::string_view url);

}  // namespace dlf
