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

#include <chrono>
#include <cstdint>
#include <string>

#include "dlf/model/dataset.h"
#include "dlf/s3/auth.h"

namespace dlf::s3 {

inline constexpr std::chrono::milliseconds kDefaultProbeTimeout{2000};

// Invariant: bucket_exists => authorized => reachable.
struct ProbeResult {
  bool reachable = false;
  bool authorized = false;
  bool bucket_exists = false;
  std::chrono::microseconds latency{0};
  std::string detail;

  bool ok() const { return reachable && authorized && bucket_exists; }
  ProbeSummary summary(std::int64_t timestamp_ms) const;
};

// Authenticated HEAD /<bucket>. Remote failures are encoded in the result;
// only a malformed endpoint throws (std::invalid_argument).
ProbeResult probe_cos(const std::string& endpoint, const std::string& bucket,
                      const Credentials& creds,
                      std::chrono::milliseconds timeout = kDefaultProbeTimeout);

// Anonymous HEAD of an archive URL; bucket_exists reports that the archive
// object itself is present.
ProbeResult probe_archive(const std::string& url,
                          std::chrono::milliseconds timeout = kDefaultProbeTimeout);

class Prober {
 public:
  virtual ~Prober() = default;
  // `spec` carries resolved credentials (no secret reference indirection).
  virtual ProbeResult probe(const DatasetSpec& spec, std::chrono::milliseconds timeout) = 0;
};

// COS -> probe_cos, ARCHIVE -> probe_archive, NFS -> reachable without a
// network call (no NFS client in this build).
class EndpointProber : public Prober {
 public:
  ProbeResult probe(const DatasetSpec& spec, std::chrono::milliseconds timeout) override;
};

// Reports every dataset reachable; used when probing is disabled.
class TrustingProber : public Prober {
 public:
  ProbeResult probe(const DatasetSpec& spec, std::chrono::milliseconds timeout) override;
};

}  // namespace dlf::s3
