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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dlf/s3/auth.h"

namespace httplib {
class Server;
}

namespace dlf::s3 {

// Injected per request: fixed + per_byte * payload bytes (response body for
// GET, request body for PUT).
struct LatencyModel {
  std::chrono::microseconds fixed{0};
  std::chrono::nanoseconds per_byte{0};

  std::chrono::nanoseconds delay_for(std::size_t bytes) const {
    return fixed + per_byte * static_cast<std::int64_t>(bytes);
  }
};

struct StubBucketConfig {
  std::string bucket_name;
  Credentials credentials;
  std::map<std::string, std::string> objects;
  LatencyModel latency;
  bool public_read = false;  // anonymous GET/HEAD of objects and listing
};

struct StubOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks an ephemeral port
  bool verify_signatures = false;  // accept only DLF-HMAC when set
};

struct StubRequest {
  std::string verb;
  std::string bucket;
  std::string key;
  std::string user_agent;
  int status = 0;
};

// In-process S3-subset server:
//   HEAD   /<bucket>           200 | 403 | 404
//   GET    /<bucket>?prefix=p  ListBucketResult XML
//   HEAD   /<bucket>/<key>     200 | 403 | 404
//   GET    /<bucket>/<key>     object bytes
//   PUT    /<bucket>/<key>     200, X-Dlf-Version: <per-key version>
//   DELETE /<bucket>/<key>     204
// Requests authenticate against the union of configured key pairs first
// (403), then resolve the bucket (404 NoSuchBucket), then require the bucket's
// own key pair (403).
class StubServer {
 public:
  static std::unique_ptr<StubServer> start(std::vector<StubBucketConfig> buckets,
                                           StubOptions options = {});
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  int port() const { return port_; }
  std::string endpoint() const;
  bool running() const { return running_.load(); }
  void stop();

  // Requests that reached a bucket route, by (bucket, verb).
  std::uint64_t request_count(const std::string& bucket, const std::string& verb) const;
  std::uint64_t request_count(const std::string& bucket, const std::string& verb,
                              const std::string& user_agent) const;
  std::uint64_t total_requests() const;
  std::map<std::pair<std::string, std::string>, std::uint64_t> counters() const;
  std::vector<StubRequest> request_log() const;
  void reset_counters();

  // Direct access for fixtures and assertions (bypasses HTTP and counters).
  std::optional<std::string> object(const std::string& bucket, const std::string& key) const;
  void put_direct(const std::string& bucket, const std::string& key, std::string content);
  std::size_t object_count(const std::string& bucket) const;

 private:
  struct Bucket {
    StubBucketConfig config;
    std::map<std::string, std::string> objects;
    std::map<std::string, std::int64_t> versions;
  };

  StubServer(std::vector<StubBucketConfig> buckets, StubOptions options);
  void install_routes();
  void record(const StubRequest& req);

  StubOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<bool> running_{false};

  mutable std::mutex mu_;
  std::map<std::string, Bucket> buckets_;
  std::map<std::pair<std::string, std::string>, std::uint64_t> counters_;
  std::vector<StubRequest> log_;
  std::uint64_t total_ = 0;
};

}  // namespace dlf::s3
