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
#include <iosfwd>
#include <string>
#include <vector>

#include "dlf/cache/gateway.h"

namespace dlf::ctl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitAssertion = 2;

// Entry point behind the dlfctl binary. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CacheTraceOptions {
  int keys = 20;
  int reuse = 3;  // each key is read this many times
  std::uint64_t object_bytes = 4096;
  std::uint64_t capacity_bytes = 1u << 20;
  std::uint64_t seed = 1;
  int origin_latency_us = 2000;
};

struct CacheTraceResult {
  cache::CacheStats stats;
  std::uint64_t reads = 0;
  std::uint64_t origin_gets = 0;  // counted by the origin stub
  std::uint64_t uncached_origin_gets = 0;  // same trace read directly
  bool bytes_ok = true;
  bool capacity_ok = true;  // cached bytes within budget after every read
  double seconds_cached = 0.0;
  double seconds_uncached = 0.0;
};

// Shuffled trace with the given reuse over a latency-floored stub origin,
// read once through a caching gateway and once directly.
CacheTraceResult run_cache_trace(const CacheTraceOptions& options);

}  // namespace dlf::ctl
